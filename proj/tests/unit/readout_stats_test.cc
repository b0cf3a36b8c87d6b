#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "tmsr/errors.h"
#include "tmsr/metrics.h"
#include "tmsr/readout_stats.h"
#include "tmsr/rng.h"
#include "tmsr/units.h"

namespace tmsr {
namespace {

struct Labeled {
    std::vector<double> values;
    std::vector<QubitState> labels;
};

Labeled equal_width(double separation, std::size_t n_each, std::uint64_t seed) {
    GaussianSource normal(seed);
    Labeled out;
    for (std::size_t k = 0; k < n_each; ++k) {
        out.values.push_back(separation / 2 + normal());
        out.labels.push_back(QubitState::ground);
    }
    for (std::size_t k = 0; k < n_each; ++k) {
        out.values.push_back(-separation / 2 + normal());
        out.labels.push_back(QubitState::excited);
    }
    return out;
}

TEST(EmpiricalSnr, Definition) {
    DoubleGaussianFit fit{3.0, -1.0, 1.0, 3.0, 0.5, 0.5};
    EXPECT_DOUBLE_EQ(empirical_snr(fit), 4.0);
    fit.sigma_g = fit.sigma_e = 0.0;
    EXPECT_THROW(empirical_snr(fit), DomainError);
}

TEST(EmpiricalFidelity, MatchesErfAtSnrEight) {
    const auto data = equal_width(std::sqrt(8.0), 100000, 31);
    const auto est = estimate_readout(data.values, data.labels);
    EXPECT_NEAR(est.fidelity.fidelity, 0.92135039647485743, 0.005);
    EXPECT_NEAR(est.snr, 8.0, 0.1);
    EXPECT_LT(est.fidelity.standard_error(), 0.001);
}

TEST(EmpiricalFidelity, ExplicitThresholdAndOrientation) {
    const std::vector<double> values = {-2.0, -1.0, 1.0, 2.0};
    // Ground below excited: the g side is the low side.
    const std::vector<QubitState> labels = {QubitState::ground, QubitState::ground, QubitState::excited,
                                            QubitState::excited};
    const auto perfect = empirical_fidelity(values, labels, 0.0);
    EXPECT_EQ(perfect.fidelity, 1.0);
    const auto shifted = empirical_fidelity(values, labels, 1.5);
    EXPECT_EQ(shifted.p_g_given_e, 0.5);
    EXPECT_EQ(shifted.p_e_given_g, 0.0);
    EXPECT_EQ(shifted.fidelity, 0.75);
}

TEST(EmpiricalFidelity, NeedsBothStates) {
    const std::vector<double> values = {1.0, 2.0};
    const std::vector<QubitState> labels(2, QubitState::ground);
    EXPECT_THROW(empirical_fidelity(values, labels, 0.0), DomainError);
}

TEST(DecisionThreshold, EqualWidthsGiveMidpoint) {
    const DoubleGaussianFit fit{2.0, -1.0, 1.0, 1.0, 0.5, 0.5};
    EXPECT_NEAR(decision_threshold(fit, ThresholdRule::likelihood_ratio), 0.5, 1e-12);
    EXPECT_EQ(decision_threshold(fit, ThresholdRule::midpoint), 0.5);
}

TEST(DecisionThreshold, UnequalWidthsBalanceDensities) {
    const DoubleGaussianFit fit{3.0, -1.0, 0.5, 2.0, 0.3, 0.7};
    const double x = decision_threshold(fit, ThresholdRule::likelihood_ratio);
    ASSERT_GT(x, -1.0);
    ASSERT_LT(x, 3.0);
    const auto density = [](double v, double mu, double s, double w) {
        return w * std::exp(-0.5 * (v - mu) * (v - mu) / (s * s)) / s;
    };
    EXPECT_NEAR(density(x, 3.0, 0.5, 0.3), density(x, -1.0, 2.0, 0.7), 1e-12);
}

TEST(DecisionThreshold, LikelihoodRatioNeverWorseThanMidpoint) {
    GaussianSource normal(6);
    Labeled data;
    for (int k = 0; k < 50000; ++k) {
        data.values.push_back(2.0 + 0.5 * normal());
        data.labels.push_back(QubitState::ground);
        data.values.push_back(-1.0 + 2.0 * normal());
        data.labels.push_back(QubitState::excited);
    }
    const auto mid = empirical_fidelity(data.values, data.labels, std::nullopt, ThresholdRule::midpoint);
    const auto lr = empirical_fidelity(data.values, data.labels, std::nullopt, ThresholdRule::likelihood_ratio);
    EXPECT_GE(lr.fidelity, mid.fidelity - 1e-3);
}

TEST(PhiSweep, ExtremaAndOrdering) {
    ShotHeader h;
    h.seed = 5;
    h.r = SqueezeParams::from_gain_db(4.0).r();
    h.nbar_in = 20.0;
    h.theta = deg_to_rad(53.7);
    h.n_sys_a = 28.2;
    h.n_sys_b = 13.4;
    h.shots_per_state = 5000;
    const auto set = sample_shots(h);

    std::vector<double> grid;
    for (int deg = 0; deg < 360; deg += 15) grid.push_back(deg_to_rad(deg));
    const auto serial = phi_sweep(set, grid, ThresholdRule::midpoint, 1);
    const auto threaded = phi_sweep(set, grid, ThresholdRule::midpoint, 4);
    ASSERT_EQ(serial.points.size(), grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        EXPECT_EQ(serial.points[k].phi, grid[k]);
        EXPECT_EQ(serial.points[k].fidelity, threaded.points[k].fidelity);
    }
    EXPECT_NEAR(serial.phi_max_fidelity, constants::pi, deg_to_rad(15.0));
    EXPECT_THROW(phi_sweep(set, std::vector<double>{}), DomainError);
}

}  // namespace
}  // namespace tmsr
