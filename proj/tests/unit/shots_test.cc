#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "tmsr/errors.h"
#include "tmsr/parallel.h"
#include "tmsr/rng.h"
#include "tmsr/shots.h"
#include "tmsr/units.h"

namespace tmsr {
namespace {

ShotHeader header_at(double gain_db, std::uint64_t n, std::uint64_t seed, std::uint64_t cell = 0) {
    ShotHeader h;
    h.seed = seed;
    h.cell = cell;
    h.r = SqueezeParams::from_gain_db(gain_db).r();
    h.nbar_in = 90.0;
    h.theta = deg_to_rad(53.7);
    h.n_sys_a = 28.2;
    h.n_sys_b = 13.4;
    h.shots_per_state = n;
    return h;
}

TEST(Rng, SubstreamSeedIsFrozen) {
    EXPECT_EQ(substream_seed(42, 3, QubitState::excited), 18315876358090669558ULL);
    EXPECT_NE(substream_seed(42, 3, QubitState::ground), substream_seed(42, 3, QubitState::excited));
    EXPECT_NE(substream_seed(42, 3, QubitState::excited), substream_seed(42, 4, QubitState::ground));
}

TEST(Rng, GaussianStreamIsFrozen) {
    GaussianSource normal(substream_seed(42, 3, QubitState::excited));
    const double expected[] = {-0.6827796345915986, -0.36684061935560813, 0.7025319958301863, 0.4141105796493331};
    for (double e : expected) {
        EXPECT_NEAR(normal(), e, 1e-14);
    }
}

TEST(Rng, GaussianMoments) {
    GaussianSource normal(1);
    const int n = 400000;
    double s = 0.0;
    double s2 = 0.0;
    double s4 = 0.0;
    for (int k = 0; k < n; ++k) {
        const double x = normal();
        s += x;
        s2 += x * x;
        s4 += x * x * x * x;
    }
    EXPECT_NEAR(s / n, 0.0, 5.0 / std::sqrt(n));
    EXPECT_NEAR(s2 / n, 1.0, 5.0 * std::sqrt(2.0 / n));
    EXPECT_NEAR(s4 / n, 3.0, 5.0 * std::sqrt(96.0 / n));
}

TEST(CovarianceFactor, SquaresBack) {
    const auto cov = output_covariance(SqueezeParams::from_r(1.3), 28.2, 13.4);
    const Eigen::Matrix4d f = covariance_factor(cov);
    EXPECT_TRUE((f * f.transpose()).isApprox(cov.matrix(), 1e-12));
}

TEST(CovarianceFactor, PureSqueezeIsNearlySingularButFactorable) {
    const auto cov = output_covariance(SqueezeParams::from_r(3.0), 0.0, 0.0);
    const Eigen::Matrix4d f = covariance_factor(cov);
    EXPECT_TRUE((f * f.transpose()).isApprox(cov.matrix(), 1e-10));
}

TEST(CovarianceFactor, RejectsIndefinite) {
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    m(0, 0) = -1.0;
    EXPECT_THROW(covariance_factor(QuadCovariance(m)), NumericalError);
}

TEST(SampleShots, DeterministicForSeed) {
    const auto a = sample_shots(header_at(2.3, 500, 17));
    const auto b = sample_shots(header_at(2.3, 500, 17));
    const auto c = sample_shots(header_at(2.3, 500, 18));
    EXPECT_EQ(a, b);
    EXPECT_NE(a.shots, c.shots);
}

TEST(SampleShots, CellsIndependentOfScheduling) {
    std::vector<ShotSet> parallel(6);
    parallel_for(parallel.size(), 4, [&](std::size_t i) { parallel[i] = sample_shots(header_at(1.3, 200, 9, i)); });
    for (std::size_t i = 0; i < parallel.size(); ++i) {
        EXPECT_EQ(parallel[i], sample_shots(header_at(1.3, 200, 9, i)));
    }
    EXPECT_NE(parallel[0].shots, parallel[1].shots);
}

TEST(SampleShots, LayoutAndLabels) {
    const auto set = sample_shots(header_at(2.3, 10, 1));
    ASSERT_EQ(set.shots.size(), 20u);
    EXPECT_EQ(set.count(QubitState::ground), 10u);
    EXPECT_EQ(set.count(QubitState::excited), 10u);
    for (std::size_t k = 0; k < 10; ++k) {
        EXPECT_EQ(set.shots[k].label, QubitState::ground);
        EXPECT_EQ(set.shots[k + 10].label, QubitState::excited);
    }
    EXPECT_THROW(sample_shots(header_at(2.3, 0, 1)), DomainError);
}

TEST(SampleShots, MomentsConvergeToModel) {
    const auto h = header_at(4.0, 100000, 2024);
    const auto set = sample_shots(h);
    const auto params = SqueezeParams::from_r(h.r);
    const Eigen::Matrix4d cov = aligned_covariance(params, h.n_sys_a, h.n_sys_b).matrix();
    for (QubitState s : {QubitState::ground, QubitState::excited}) {
        const Eigen::Vector4d expected = propagate_means(encode_input(h.nbar_in, h.theta, s), params).as_vector();
        const Eigen::Vector4d mean = sample_mean(set, s);
        for (int j = 0; j < 4; ++j) {
            EXPECT_NEAR(mean[j], expected[j], 5.0 * std::sqrt(cov(j, j) / 1e5));
        }
        const Eigen::Matrix4d sample = sample_covariance(set, s);
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                const double sd = std::sqrt((cov(i, i) * cov(j, j) + cov(i, j) * cov(i, j)) / 1e5);
                EXPECT_NEAR(sample(i, j), cov(i, j), 5.0 * sd) << i << "," << j;
            }
        }
    }
}

TEST(SampleShots, CombinedMeansFollowAlignedModel) {
    const auto h = header_at(3.3, 50000, 77);
    const auto set = sample_shots(h);
    const auto params = SqueezeParams::from_r(h.r);
    const auto g = propagate_means(encode_input(h.nbar_in, h.theta, QubitState::ground), params);
    const auto means = combined_means(set, constants::pi);
    const auto expected = combine(g, constants::pi);
    EXPECT_NEAR(means.ground.i_ab, expected.i_ab, 0.05);
    EXPECT_NEAR(means.ground.q_ab, expected.q_ab, 0.05);
}

TEST(Project, CombinedProjectionMatchesCombine) {
    const auto set = sample_shots(header_at(2.3, 20, 3));
    const auto values = project(set, Projection::q_ab, 0.7);
    for (std::size_t k = 0; k < values.size(); ++k) {
        EXPECT_EQ(values[k], combine(set.shots[k].quad, 0.7).q_ab);
    }
    EXPECT_EQ(project(set, Projection::i_b)[4], set.shots[4].quad.i_b);
}

TEST(ParallelFor, RethrowsFirstFailure) {
    EXPECT_THROW(parallel_for(100, 4,
                              [](std::size_t i) {
                                  if (i == 37) throw DomainError("test", "boom");
                              }),
                 DomainError);
}

}  // namespace
}  // namespace tmsr
