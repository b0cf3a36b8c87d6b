#include "tmsr/readout_stats.h"

#include <algorithm>
#include <cmath>

#include "tmsr/parallel.h"

namespace tmsr {

namespace {

constexpr std::string_view kModule = "shot_engine";

std::size_t argmax_by(std::span<const PhiPoint> points, auto key) {
    return static_cast<std::size_t>(
        std::max_element(points.begin(), points.end(), [&](const auto &x, const auto &y) { return key(x) < key(y); }) -
        points.begin());
}

}  // namespace

double empirical_snr(const DoubleGaussianFit &fit) {
    const double mean_sigma = 0.5 * (fit.sigma_g + fit.sigma_e);
    if (!(mean_sigma > 0.0)) {
        throw DomainError(kModule, "SNR undefined for zero standard deviations");
    }
    const double snr = (fit.mu_g - fit.mu_e) / mean_sigma;
    return snr * snr;
}

double decision_threshold(const DoubleGaussianFit &fit, ThresholdRule rule) {
    const double mid = 0.5 * (fit.mu_g + fit.mu_e);
    if (rule == ThresholdRule::midpoint) {
        return mid;
    }
    // Solve w_g N(x; mu_g, s_g) = w_e N(x; mu_e, s_e), i.e. a x^2 + b x + c = 0.
    const double vg = fit.sigma_g * fit.sigma_g;
    const double ve = fit.sigma_e * fit.sigma_e;
    const double a = 1.0 / ve - 1.0 / vg;
    const double b = 2.0 * (fit.mu_g / vg - fit.mu_e / ve);
    const double c = fit.mu_e * fit.mu_e / ve - fit.mu_g * fit.mu_g / vg +
                     2.0 * std::log((fit.w_g * fit.sigma_e) / (fit.w_e * fit.sigma_g));
    if (std::abs(a) < 1e-12 * (1.0 / vg + 1.0 / ve)) {
        return std::abs(b) > 0.0 ? -c / b : mid;
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) {
        return mid;
    }
    const double root1 = (-b + std::sqrt(disc)) / (2.0 * a);
    const double root2 = (-b - std::sqrt(disc)) / (2.0 * a);
    const double lo = std::min(fit.mu_g, fit.mu_e);
    const double hi = std::max(fit.mu_g, fit.mu_e);
    if (root1 >= lo && root1 <= hi) return root1;
    if (root2 >= lo && root2 <= hi) return root2;
    return std::abs(root1 - mid) < std::abs(root2 - mid) ? root1 : root2;
}

double FidelityEstimate::standard_error() const {
    const auto var = [](double p, std::size_t n) { return n == 0 ? 0.0 : p * (1.0 - p) / static_cast<double>(n); };
    return 0.5 * std::sqrt(var(p_g_given_e, n_e) + var(p_e_given_g, n_g));
}

FidelityEstimate empirical_fidelity(std::span<const double> values, std::span<const QubitState> labels,
                                    std::optional<double> threshold, ThresholdRule rule) {
    if (labels.size() != values.size()) {
        throw DomainError(kModule, "labels and values differ in length");
    }
    double sum_g = 0.0;
    double sum_e = 0.0;
    FidelityEstimate est;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (labels[k] == QubitState::ground) {
            sum_g += values[k];
            ++est.n_g;
        } else {
            sum_e += values[k];
            ++est.n_e;
        }
    }
    if (est.n_g == 0 || est.n_e == 0) {
        throw DomainError(kModule, "fidelity needs shots prepared in both states");
    }
    const bool ground_above = sum_g / static_cast<double>(est.n_g) >= sum_e / static_cast<double>(est.n_e);
    est.threshold = threshold ? *threshold : decision_threshold(fit_labeled(values, labels), rule);

    std::size_t g_as_e = 0;
    std::size_t e_as_g = 0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        const bool says_ground = ground_above ? values[k] > est.threshold : values[k] < est.threshold;
        if (labels[k] == QubitState::ground && !says_ground) ++g_as_e;
        if (labels[k] == QubitState::excited && says_ground) ++e_as_g;
    }
    est.p_e_given_g = static_cast<double>(g_as_e) / static_cast<double>(est.n_g);
    est.p_g_given_e = static_cast<double>(e_as_g) / static_cast<double>(est.n_e);
    est.fidelity = 1.0 - 0.5 * (est.p_g_given_e + est.p_e_given_g);
    return est;
}

ReadoutEstimate estimate_readout(std::span<const double> values, std::span<const QubitState> labels,
                                 ThresholdRule rule) {
    ReadoutEstimate out;
    out.fit = fit_labeled(values, labels);
    out.snr = empirical_snr(out.fit);
    out.fidelity = empirical_fidelity(values, labels, decision_threshold(out.fit, rule));
    return out;
}

PhiSweepResult phi_sweep(const ShotSet &set, std::span<const double> grid, ThresholdRule rule, std::size_t jobs) {
    if (grid.empty()) {
        throw DomainError(kModule, "phi grid is empty");
    }
    const std::vector<QubitState> labels = set.labels();
    PhiSweepResult result;
    result.points.resize(grid.size());
    parallel_for(grid.size(), jobs, [&](std::size_t k) {
        const double phi = grid[k];
        const std::vector<double> values = project(set, Projection::i_ab, phi);
        const ReadoutEstimate est = estimate_readout(values, labels, rule);
        const CombinedMeans means = combined_means(set, phi);
        result.points[k] = {phi,
                            est.fidelity.fidelity,
                            est.snr,
                            means.ground.i_ab * means.ground.i_ab + means.ground.q_ab * means.ground.q_ab,
                            means.excited.i_ab * means.excited.i_ab + means.excited.q_ab * means.excited.q_ab};
    });

    const std::span<const PhiPoint> pts(result.points);
    result.phi_max_fidelity = pts[argmax_by(pts, [](const PhiPoint &p) { return p.fidelity; })].phi;
    result.phi_min_fidelity = pts[argmax_by(pts, [](const PhiPoint &p) { return -p.fidelity; })].phi;
    result.phi_max_joint_nbar = pts[argmax_by(pts, [](const PhiPoint &p) { return p.nbar_g + p.nbar_e; })].phi;
    result.phi_min_joint_nbar = pts[argmax_by(pts, [](const PhiPoint &p) { return -(p.nbar_g + p.nbar_e); })].phi;
    return result;
}

}  // namespace tmsr
