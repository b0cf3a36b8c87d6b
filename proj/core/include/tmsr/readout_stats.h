#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tmsr/mixture_fit.h"
#include "tmsr/shots.h"

namespace tmsr {

/// Power SNR ((mu_g - mu_e) / ((sigma_g + sigma_e)/2))^2. Throws DomainError
/// when both sigmas are zero.
double empirical_snr(const DoubleGaussianFit &fit);

enum class ThresholdRule {
    midpoint,          // (mu_g + mu_e)/2, the equal-sigma optimum
    likelihood_ratio,  // crossing of the two weighted Gaussian densities between the means
};

double decision_threshold(const DoubleGaussianFit &fit, ThresholdRule rule = ThresholdRule::midpoint);

struct FidelityEstimate {
    double fidelity = 0.0;
    double threshold = 0.0;
    double p_g_given_e = 0.0;
    double p_e_given_g = 0.0;
    std::size_t n_g = 0;
    std::size_t n_e = 0;

    /// Binomial standard error of the fidelity.
    double standard_error() const;
};

/// F = 1 - [P(g|e) + P(e|g)]/2 from labeled projections. The side of the
/// threshold that counts as g is the side holding the ground-state mean.
/// Without an explicit threshold one is placed by `rule` on a labeled fit.
/// Throws DomainError unless both labels are present.
FidelityEstimate empirical_fidelity(std::span<const double> values, std::span<const QubitState> labels,
                                    std::optional<double> threshold = std::nullopt,
                                    ThresholdRule rule = ThresholdRule::midpoint);

/// Fit, SNR and fidelity of one projection of a labeled shot set.
struct ReadoutEstimate {
    DoubleGaussianFit fit;
    double snr = 0.0;
    FidelityEstimate fidelity;
};

ReadoutEstimate estimate_readout(std::span<const double> values, std::span<const QubitState> labels,
                                 ThresholdRule rule = ThresholdRule::midpoint);

struct PhiPoint {
    double phi = 0.0;
    double fidelity = 0.0;
    double snr = 0.0;
    double nbar_g = 0.0;
    double nbar_e = 0.0;
};

struct PhiSweepResult {
    std::vector<PhiPoint> points;
    double phi_max_fidelity = 0.0;
    double phi_min_fidelity = 0.0;
    /// Extremes of nbar_g + nbar_e, the joint photon number of both states.
    double phi_min_joint_nbar = 0.0;
    double phi_max_joint_nbar = 0.0;
};

/// Combines every shot at each grid angle, projects on I_ab and measures the
/// fidelity and the per-state combined photon numbers. Grid points are
/// evaluated on up to `jobs` threads; results stay in grid order.
PhiSweepResult phi_sweep(const ShotSet &set, std::span<const double> grid,
                         ThresholdRule rule = ThresholdRule::midpoint, std::size_t jobs = 1);

}  // namespace tmsr
