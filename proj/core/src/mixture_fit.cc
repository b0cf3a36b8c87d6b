#include "tmsr/mixture_fit.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>
#include <unsupported/Eigen/NonLinearOptimization>

#include "tmsr/constants.h"

namespace tmsr {

namespace {

constexpr std::string_view kModule = "shot_engine";
constexpr std::size_t kMinPoints = 100;
constexpr double kMinWeight = 1e-3;
// F statistic (3 extra parameters) below which the second component is dropped.
constexpr double kSecondComponentF = 10.0;

struct Moments {
    double mean = 0.0;
    double sigma = 0.0;
    std::size_t n = 0;
};

template <typename Pred>
Moments moments_where(std::span<const double> values, Pred keep) {
    Moments m;
    double sum = 0.0;
    for (double v : values) {
        if (keep(v)) {
            sum += v;
            ++m.n;
        }
    }
    if (m.n == 0) {
        return m;
    }
    m.mean = sum / static_cast<double>(m.n);
    double ss = 0.0;
    for (double v : values) {
        if (keep(v)) {
            ss += (v - m.mean) * (v - m.mean);
        }
    }
    m.sigma = std::sqrt(ss / static_cast<double>(m.n));
    return m;
}

double gaussian_counts(double x, double amplitude, double mu, double sigma) {
    const double z = (x - mu) / sigma;
    return amplitude * std::exp(-0.5 * z * z);
}

// Parameters: [A, mu, log sigma] per component, against bin counts.
struct HistogramResidual {
    const Histogram &hist;
    int components = 2;

    int inputs() const { return 3 * components; }
    int values() const { return static_cast<int>(hist.counts.size()); }

    int operator()(const Eigen::VectorXd &p, Eigen::VectorXd &f) const {
        for (int j = 0; j < values(); ++j) {
            const double x = hist.center(static_cast<std::size_t>(j));
            f[j] = -hist.counts[j];
            for (int k = 0; k < components; ++k) {
                f[j] += gaussian_counts(x, p[3 * k], p[3 * k + 1], std::exp(p[3 * k + 2]));
            }
        }
        return 0;
    }

    int df(const Eigen::VectorXd &p, Eigen::MatrixXd &jac) const {
        for (int k = 0; k < components; ++k) {
            const double a = p[3 * k];
            const double mu = p[3 * k + 1];
            const double sigma = std::exp(p[3 * k + 2]);
            for (int j = 0; j < values(); ++j) {
                const double d = hist.center(static_cast<std::size_t>(j)) - mu;
                const double e = std::exp(-0.5 * d * d / (sigma * sigma));
                jac(j, 3 * k) = e;
                jac(j, 3 * k + 1) = a * e * d / (sigma * sigma);
                jac(j, 3 * k + 2) = a * e * d * d / (sigma * sigma);
            }
        }
        return 0;
    }
};

double amplitude_for(std::size_t n, double width, double sigma) {
    return static_cast<double>(n) * width / (sigma * std::sqrt(constants::two_pi));
}

double histogram_residual(const Histogram &hist, const DoubleGaussianFit &fit, std::size_t total) {
    const double a_g = amplitude_for(total, hist.width, fit.sigma_g) * fit.w_g;
    const double a_e = amplitude_for(total, hist.width, fit.sigma_e) * fit.w_e;
    double ss = 0.0;
    for (std::size_t j = 0; j < hist.counts.size(); ++j) {
        const double x = hist.center(j);
        const double r =
            gaussian_counts(x, a_g, fit.mu_g, fit.sigma_g) + gaussian_counts(x, a_e, fit.mu_e, fit.sigma_e) -
            hist.counts[j];
        ss += r * r;
    }
    return ss;
}

void require_points(std::size_t n) {
    if (n < kMinPoints) {
        throw DomainError(kModule, "double-Gaussian fit needs >= 100 points, got " + std::to_string(n));
    }
}

}  // namespace

bool components_resolved(const DoubleGaussianFit &fit) {
    return std::abs(fit.mu_g - fit.mu_e) >= (fit.sigma_g + fit.sigma_e) / 4.0 && fit.w_g >= kMinWeight &&
           fit.w_e >= kMinWeight;
}

Histogram make_histogram(std::span<const double> values, std::size_t bins) {
    if (values.empty() || bins == 0) {
        throw DomainError(kModule, "histogram needs values and at least one bin");
    }
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (!(hi > lo)) {
        throw DomainError(kModule, "histogram of constant data is degenerate");
    }
    Histogram h{lo, (hi - lo) / static_cast<double>(bins), std::vector<double>(bins, 0.0)};
    for (double v : values) {
        auto bin = static_cast<std::size_t>((v - lo) / h.width);
        h.counts[std::min(bin, bins - 1)] += 1.0;
    }
    return h;
}

DoubleGaussianFit fit_labeled(std::span<const double> values, std::span<const QubitState> labels,
                              std::size_t bins) {
    require_points(values.size());
    if (labels.size() != values.size()) {
        throw DomainError(kModule, "labels and values differ in length");
    }
    Moments g;
    Moments e;
    {
        std::vector<double> gv;
        std::vector<double> ev;
        for (std::size_t k = 0; k < values.size(); ++k) {
            (labels[k] == QubitState::ground ? gv : ev).push_back(values[k]);
        }
        g = moments_where(std::span<const double>(gv), [](double) { return true; });
        e = moments_where(std::span<const double>(ev), [](double) { return true; });
    }
    if (g.n == 0 || e.n == 0) {
        throw DomainError(kModule, "labeled fit needs shots of both states");
    }
    if (!(g.sigma > 0.0) || !(e.sigma > 0.0)) {
        throw DomainError(kModule, "labeled fit found zero spread in one state");
    }

    DoubleGaussianFit fit;
    fit.mu_g = g.mean;
    fit.mu_e = e.mean;
    fit.sigma_g = g.sigma;
    fit.sigma_e = e.sigma;
    fit.w_g = static_cast<double>(g.n) / static_cast<double>(values.size());
    fit.w_e = 1.0 - fit.w_g;
    fit.residual = histogram_residual(make_histogram(values, bins), fit, values.size());
    fit.resolved = components_resolved(fit);
    return fit;
}

DoubleGaussianFit fit_double_gaussian(std::span<const double> values, const MixtureFitOptions &options) {
    require_points(values.size());
    const Histogram hist = make_histogram(values, options.bins);
    const std::size_t total = values.size();

    Eigen::VectorXd p(6);
    if (options.init) {
        const DoubleGaussianFit &init = *options.init;
        p << amplitude_for(total, hist.width, init.sigma_e) * init.w_e, init.mu_e, std::log(init.sigma_e),
            amplitude_for(total, hist.width, init.sigma_g) * init.w_g, init.mu_g, std::log(init.sigma_g);
    } else {
        const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(total);
        const Moments lower = moments_where(values, [mean](double v) { return v < mean; });
        const Moments upper = moments_where(values, [mean](double v) { return v >= mean; });
        const double floor = hist.width;
        const double s_lo = std::max(lower.sigma, floor);
        const double s_hi = std::max(upper.sigma, floor);
        p << amplitude_for(lower.n, hist.width, s_lo), lower.mean, std::log(s_lo),
            amplitude_for(upper.n, hist.width, s_hi), upper.mean, std::log(s_hi);
    }

    HistogramResidual functor{hist, 2};
    Eigen::LevenbergMarquardt<HistogramResidual> lm(functor);
    lm.parameters.maxfev = static_cast<Eigen::Index>(options.max_evaluations);
    const auto status = lm.minimize(p);

    // Component ordering: larger mean is g.
    int g_idx = p[1] >= p[4] ? 0 : 1;
    int e_idx = 1 - g_idx;
    DoubleGaussianFit fit;
    fit.mu_g = p[3 * g_idx + 1];
    fit.mu_e = p[3 * e_idx + 1];
    fit.sigma_g = std::exp(p[3 * g_idx + 2]);
    fit.sigma_e = std::exp(p[3 * e_idx + 2]);
    const double mass_g = std::abs(p[3 * g_idx]) * fit.sigma_g;
    const double mass_e = std::abs(p[3 * e_idx]) * fit.sigma_e;
    fit.w_g = mass_g / (mass_g + mass_e);
    fit.w_e = 1.0 - fit.w_g;
    fit.residual = lm.fvec.squaredNorm();
    fit.iterations = static_cast<std::size_t>(lm.nfev);
    fit.resolved = components_resolved(fit);

    using Status = Eigen::LevenbergMarquardtSpace::Status;
    if (status == Status::TooManyFunctionEvaluation) {
        throw MixtureFitError("double-Gaussian fit did not converge within " +
                                  std::to_string(options.max_evaluations) +
                                  " evaluations (residual " + std::to_string(fit.residual) + ")",
                              fit);
    }
    if (status == Status::ImproperInputParameters || !p.allFinite()) {
        throw MixtureFitError("double-Gaussian fit failed", fit);
    }

    // A single Gaussian can be matched almost exactly by two overlapping
    // ones, which leaves the means arbitrary. Keep the second component only
    // if it explains significantly more of the histogram than one does.
    const Moments all = moments_where(values, [](double) { return true; });
    const double s_all = std::max(all.sigma, hist.width);
    Eigen::VectorXd q(3);
    q << amplitude_for(total, hist.width, s_all), all.mean, std::log(s_all);
    HistogramResidual single{hist, 1};
    Eigen::LevenbergMarquardt<HistogramResidual> lm1(single);
    lm1.parameters.maxfev = static_cast<Eigen::Index>(options.max_evaluations);
    lm1.minimize(q);
    const double res1 = lm1.fvec.squaredNorm();
    const double dof = static_cast<double>(hist.counts.size()) - 6.0;
    const double f_stat = dof > 0.0 && fit.residual > 0.0 ? ((res1 - fit.residual) / 3.0) / (fit.residual / dof)
                                                         : std::numeric_limits<double>::infinity();
    if (q.allFinite() && f_stat < kSecondComponentF) {
        fit.mu_g = fit.mu_e = q[1];
        fit.sigma_g = fit.sigma_e = std::exp(q[2]);
        fit.w_g = fit.w_e = 0.5;
        fit.residual = res1;
        fit.iterations += static_cast<std::size_t>(lm1.nfev);
        fit.resolved = false;
    }
    return fit;
}

DoubleGaussianFit fit_double_gaussian(std::span<const double> values, std::span<const QubitState> labels,
                                      const MixtureFitOptions &options) {
    if (!labels.empty()) {
        return fit_labeled(values, labels, options.bins);
    }
    return fit_double_gaussian(values, options);
}

}  // namespace tmsr
