#pragma once

#include <cstdint>
#include <random>

#include "tmsr/squeeze.h"

namespace tmsr {

/// Seed of the random substream that generates the shots of one prepared
/// state inside one sweep cell. The rule is
///   substream_seed(seed, cell, state) = mix(mix(seed) + 2*cell + state)
/// with mix() the splitmix64 finalizer, so every (cell, state) pair draws from
/// an independent mt19937_64 stream and sweeps are reproducible regardless of
/// how cells are scheduled.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t cell, QubitState state);

/// Standard normal deviates from mt19937_64 via Box-Muller. Both the engine
/// and the transform are fully specified, so streams are identical across
/// standard-library implementations (std::normal_distribution is not).
class GaussianSource {
   public:
    explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

    double operator()();

   private:
    double uniform_open();  // (0, 1]

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace tmsr
