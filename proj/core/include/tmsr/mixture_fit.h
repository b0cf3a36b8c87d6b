#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tmsr/errors.h"
#include "tmsr/squeeze.h"

namespace tmsr {

/// Two-component Gaussian description of a 1-D readout projection.
struct DoubleGaussianFit {
    double mu_g = 0.0;
    double mu_e = 0.0;
    double sigma_g = 1.0;
    double sigma_e = 1.0;
    double w_g = 0.5;
    double w_e = 0.5;
    double residual = 0.0;  // sum of squared histogram residuals (counts^2)
    bool resolved = true;   // false when the components overlap or one weight vanishes
    std::size_t iterations = 0;
};

/// The components are "unresolved" when |mu_g - mu_e| < (sigma_g + sigma_e)/4
/// or either weight falls below 1e-3.
bool components_resolved(const DoubleGaussianFit &fit);

struct Histogram {
    double lo = 0.0;
    double width = 1.0;
    std::vector<double> counts;

    double center(std::size_t bin) const { return lo + (static_cast<double>(bin) + 0.5) * width; }
};

Histogram make_histogram(std::span<const double> values, std::size_t bins);

struct MixtureFitOptions {
    std::size_t bins = 200;
    std::size_t max_evaluations = 2000;
    std::optional<DoubleGaussianFit> init;
};

/// Thrown when the unlabeled fit hits its evaluation cap; carries the best
/// parameters found so far.
class MixtureFitError : public FitError {
   public:
    MixtureFitError(const std::string &what, DoubleGaussianFit best) : FitError("shot_engine", what), best_(best) {}
    const DoubleGaussianFit &best() const { return best_; }

   private:
    DoubleGaussianFit best_;
};

/// Per-label maximum-likelihood Gaussians (sample mean, 1/N standard deviation).
/// Weights are the label fractions. Requires >= 100 points and both labels.
DoubleGaussianFit fit_labeled(std::span<const double> values, std::span<const QubitState> labels,
                              std::size_t bins = 200);

/// Unlabeled two-Gaussian least-squares fit to a histogram, started from the
/// moments of the data on each side of its mean. The component with the
/// larger mean is reported as g. Requires >= 100 points.
/// When a single Gaussian fits the histogram about as well (F statistic of
/// the extra component below 10), both components collapse onto it and the
/// result is marked unresolved.
DoubleGaussianFit fit_double_gaussian(std::span<const double> values, const MixtureFitOptions &options = {});

/// Dispatches to fit_labeled() when labels are given, else fit_double_gaussian().
DoubleGaussianFit fit_double_gaussian(std::span<const double> values, std::span<const QubitState> labels,
                                      const MixtureFitOptions &options = {});

}  // namespace tmsr
