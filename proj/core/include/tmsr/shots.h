#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "tmsr/signal_model.h"
#include "tmsr/squeeze.h"

namespace tmsr {

struct Shot {
    QubitState label = QubitState::ground;
    QuadVector quad;

    friend bool operator==(const Shot &, const Shot &) = default;
};

/// Everything needed to regenerate a shot set bit-for-bit. Serialized with it.
struct ShotHeader {
    std::uint64_t seed = 0;
    std::uint64_t cell = 0;
    double r = 0.0;
    double nbar_in = 0.0;
    double theta = 0.0;
    double n_sys_a = 0.0;
    double n_sys_b = 0.0;
    std::uint64_t shots_per_state = 0;

    friend bool operator==(const ShotHeader &, const ShotHeader &) = default;
};

/// IQ shots at the amplifier-output plane, idler already aligned. Ground
/// shots come first, then excited shots.
struct ShotSet {
    ShotHeader header;
    std::vector<Shot> shots;

    std::size_t count(QubitState state) const;
    std::vector<QubitState> labels() const;

    friend bool operator==(const ShotSet &, const ShotSet &) = default;
};

/// Symmetric square root of a covariance matrix. Eigenvalues in [-1e-12, 0)
/// are clamped to zero; anything more negative throws NumericalError.
Eigen::Matrix4d covariance_factor(const QuadCovariance &covariance);

/// Draws `shots_per_state` shots for each prepared state from the Gaussian
/// whose mean is the raw amplifier output of the encoded input and whose
/// covariance is output_covariance(), then applies the fixed idler alignment.
/// The resulting sample means follow propagate_means(). Ground and excited
/// shots use substream_seed(seed, cell, state).
ShotSet sample_shots(const SqueezeParams &params, const DispersiveInput &ground, const DispersiveInput &excited,
                     const OutputChain &chain_a, const OutputChain &chain_b, std::size_t shots_per_state,
                     std::uint64_t seed, std::uint64_t cell = 0);

/// Same draw described by a header alone (nbar_in/theta shared by both states).
ShotSet sample_shots(const ShotHeader &header);

/// Quadrature projected out of each shot.
enum class Projection { i_a, q_a, i_b, q_b, i_ab, q_ab };

std::vector<double> project(const ShotSet &set, Projection projection, double phi = 0.0);

/// Per-state sample means of the combined quadratures.
struct CombinedMeans {
    CombinedQuad ground;
    CombinedQuad excited;
};
CombinedMeans combined_means(const ShotSet &set, double phi);

/// Unbiased sample covariance of the shots of one prepared state.
Eigen::Matrix4d sample_covariance(const ShotSet &set, QubitState state);
Eigen::Vector4d sample_mean(const ShotSet &set, QubitState state);

}  // namespace tmsr
