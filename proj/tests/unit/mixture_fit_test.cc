#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "tmsr/errors.h"
#include "tmsr/mixture_fit.h"
#include "tmsr/rng.h"

namespace tmsr {
namespace {

struct Labeled {
    std::vector<double> values;
    std::vector<QubitState> labels;
};

Labeled two_gaussians(double mu_g, double sigma_g, double mu_e, double sigma_e, std::size_t n_each,
                      std::uint64_t seed) {
    GaussianSource normal(seed);
    Labeled out;
    for (std::size_t k = 0; k < n_each; ++k) {
        out.values.push_back(mu_g + sigma_g * normal());
        out.labels.push_back(QubitState::ground);
    }
    for (std::size_t k = 0; k < n_each; ++k) {
        out.values.push_back(mu_e + sigma_e * normal());
        out.labels.push_back(QubitState::excited);
    }
    return out;
}

TEST(MixtureFit, UnlabeledRecoversSeparatedComponents) {
    const auto data = two_gaussians(3.0, 1.0, -3.0, 1.0, 50000, 12);
    const auto fit = fit_double_gaussian(data.values);
    EXPECT_NEAR(fit.mu_g, 3.0, 0.05);
    EXPECT_NEAR(fit.mu_e, -3.0, 0.05);
    EXPECT_NEAR(fit.sigma_g, 1.0, 0.05);
    EXPECT_NEAR(fit.sigma_e, 1.0, 0.05);
    EXPECT_NEAR(fit.w_g, 0.5, 0.02);
    EXPECT_TRUE(fit.resolved);
}

TEST(MixtureFit, UnlabeledHandlesUnequalWidthsAndWeights) {
    GaussianSource normal(99);
    std::vector<double> values;
    for (int k = 0; k < 70000; ++k) values.push_back(-2.0 + 0.7 * normal());
    for (int k = 0; k < 30000; ++k) values.push_back(4.0 + 1.5 * normal());
    const auto fit = fit_double_gaussian(values);
    EXPECT_NEAR(fit.mu_g, 4.0, 0.05);
    EXPECT_NEAR(fit.mu_e, -2.0, 0.05);
    EXPECT_NEAR(fit.sigma_g, 1.5, 0.05);
    EXPECT_NEAR(fit.sigma_e, 0.7, 0.05);
    EXPECT_NEAR(fit.w_g, 0.3, 0.02);
}

TEST(MixtureFit, SingleGaussianIsFlaggedUnresolved) {
    GaussianSource normal(5);
    std::vector<double> values;
    for (int k = 0; k < 100000; ++k) values.push_back(1.0 + normal());
    try {
        const auto fit = fit_double_gaussian(values);
        EXPECT_FALSE(fit.resolved);
        EXPECT_NEAR(fit.mu_g, 1.0, 0.05);
    } catch (const MixtureFitError &err) {
        EXPECT_FALSE(err.best().resolved);
    }
}

TEST(MixtureFit, OverlappingComponentsStayResolved) {
    // Separation sqrt(8) sigma, the SNR-8 regime where fidelity is about 0.92.
    const double half = std::sqrt(8.0) / 2.0;
    const auto data = two_gaussians(half, 1.0, -half, 1.0, 50000, 21);
    const auto fit = fit_double_gaussian(data.values);
    EXPECT_TRUE(fit.resolved);
    EXPECT_NEAR(fit.mu_g, half, 0.1);
    EXPECT_NEAR(fit.mu_e, -half, 0.1);
}

TEST(MixtureFit, EvaluationCapRaisesWithBestEstimate) {
    const auto data = two_gaussians(3.0, 1.0, -3.0, 1.0, 5000, 1);
    MixtureFitOptions opts;
    opts.max_evaluations = 2;
    try {
        fit_double_gaussian(data.values, opts);
        FAIL() << "expected MixtureFitError";
    } catch (const MixtureFitError &err) {
        EXPECT_TRUE(std::isfinite(err.best().mu_g));
        EXPECT_NE(std::string(err.what()).find("shot_engine:"), std::string::npos);
    }
}

TEST(MixtureFit, ExplicitInitialGuessIsUsed) {
    const auto data = two_gaussians(3.0, 1.0, -3.0, 1.0, 20000, 4);
    MixtureFitOptions opts;
    opts.init = DoubleGaussianFit{2.5, -2.5, 1.2, 0.8, 0.5, 0.5};
    const auto fit = fit_double_gaussian(data.values, opts);
    EXPECT_NEAR(fit.mu_g, 3.0, 0.05);
    EXPECT_NEAR(fit.mu_e, -3.0, 0.05);
}

TEST(MixtureFit, LabeledUsesSampleMoments) {
    const auto data = two_gaussians(1.0, 2.0, -0.5, 0.5, 1000, 8);
    const auto fit = fit_labeled(data.values, data.labels);
    double mean_g = 0.0;
    for (std::size_t k = 0; k < 1000; ++k) mean_g += data.values[k];
    mean_g /= 1000.0;
    double ss = 0.0;
    for (std::size_t k = 0; k < 1000; ++k) ss += (data.values[k] - mean_g) * (data.values[k] - mean_g);
    EXPECT_NEAR(fit.mu_g, mean_g, 1e-12);
    EXPECT_NEAR(fit.sigma_g, std::sqrt(ss / 1000.0), 1e-12);
    EXPECT_DOUBLE_EQ(fit.w_g, 0.5);
}

TEST(MixtureFit, DispatchOnLabels) {
    const auto data = two_gaussians(3.0, 1.0, -3.0, 1.0, 1000, 8);
    const auto labeled = fit_double_gaussian(data.values, data.labels);
    const auto direct = fit_labeled(data.values, data.labels);
    EXPECT_EQ(labeled.mu_g, direct.mu_g);
    EXPECT_EQ(labeled.sigma_e, direct.sigma_e);
}

TEST(MixtureFit, InputValidation) {
    std::vector<double> few(99, 1.0);
    EXPECT_THROW(fit_double_gaussian(few), DomainError);
    const auto data = two_gaussians(3.0, 1.0, -3.0, 1.0, 100, 8);
    std::vector<QubitState> all_g(data.values.size(), QubitState::ground);
    EXPECT_THROW(fit_labeled(data.values, all_g), DomainError);
    std::vector<QubitState> short_labels(10, QubitState::ground);
    EXPECT_THROW(fit_labeled(data.values, short_labels), DomainError);
}

TEST(ComponentsResolved, Rule) {
    DoubleGaussianFit fit{1.0, 0.0, 2.0, 2.0, 0.5, 0.5};
    EXPECT_TRUE(components_resolved(fit));  // separation 1 == (2+2)/4
    fit.mu_g = 0.99;
    EXPECT_FALSE(components_resolved(fit));
    fit.mu_g = 10.0;
    fit.w_g = 5e-4;
    EXPECT_FALSE(components_resolved(fit));
}

TEST(Histogram, CountsEveryValue) {
    const std::vector<double> v = {0.0, 0.1, 0.5, 0.9, 1.0};
    const auto h = make_histogram(v, 2);
    EXPECT_EQ(h.counts[0], 2.0);
    EXPECT_EQ(h.counts[1], 3.0);
    EXPECT_DOUBLE_EQ(h.center(0), 0.25);
    EXPECT_THROW(make_histogram(std::vector<double>{1.0, 1.0}, 4), DomainError);
}

}  // namespace
}  // namespace tmsr
