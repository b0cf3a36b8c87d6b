#include "tmsr/shots.h"

#include <algorithm>
#include <string>

#include <Eigen/Eigenvalues>

#include "tmsr/errors.h"
#include "tmsr/rng.h"

namespace tmsr {

namespace {

constexpr std::string_view kModule = "shot_engine";
constexpr double kEigenClamp = -1e-12;

void append_state(std::vector<Shot> &out, QubitState state, const QuadMeans &raw_mean,
                  const Eigen::Matrix4d &factor, std::size_t n, std::uint64_t seed) {
    GaussianSource normal(seed);
    const Eigen::Vector4d mean = raw_mean.as_vector();
    for (std::size_t k = 0; k < n; ++k) {
        Eigen::Vector4d z;
        for (int j = 0; j < 4; ++j) {
            z[j] = normal();
        }
        const Eigen::Vector4d x = mean + factor * z;
        out.push_back({state, align_idler(QuadVector::from_vector(x))});
    }
}

}  // namespace

std::size_t ShotSet::count(QubitState state) const {
    return static_cast<std::size_t>(
        std::count_if(shots.begin(), shots.end(), [state](const Shot &s) { return s.label == state; }));
}

std::vector<QubitState> ShotSet::labels() const {
    std::vector<QubitState> out;
    out.reserve(shots.size());
    for (const Shot &s : shots) {
        out.push_back(s.label);
    }
    return out;
}

Eigen::Matrix4d covariance_factor(const QuadCovariance &covariance) {
    const Eigen::Matrix4d &m = covariance.matrix();
    if (!m.allFinite()) {
        throw NumericalError(kModule, "covariance has non-finite entries");
    }
    if (!m.isApprox(m.transpose(), 1e-12)) {
        throw NumericalError(kModule, "covariance is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> eig(m);
    if (eig.info() != Eigen::Success) {
        throw NumericalError(kModule, "eigen-decomposition of covariance failed");
    }
    Eigen::Vector4d values = eig.eigenvalues();
    for (int i = 0; i < 4; ++i) {
        if (values[i] < kEigenClamp) {
            throw NumericalError(kModule, "covariance is not positive semi-definite (eigenvalue " +
                                              std::to_string(values[i]) + ")");
        }
        values[i] = std::sqrt(std::max(values[i], 0.0));
    }
    return eig.eigenvectors() * values.asDiagonal() * eig.eigenvectors().transpose();
}

ShotSet sample_shots(const SqueezeParams &params, const DispersiveInput &ground, const DispersiveInput &excited,
                     const OutputChain &chain_a, const OutputChain &chain_b, std::size_t shots_per_state,
                     std::uint64_t seed, std::uint64_t cell) {
    if (shots_per_state == 0) {
        throw DomainError(kModule, "shot count must be >= 1");
    }
    const Eigen::Matrix4d factor =
        covariance_factor(output_covariance(params, chain_a.n_sys(), chain_b.n_sys()));

    ShotSet set;
    set.header = {seed,          cell,          params.r(), ground.nbar_in, ground.theta, chain_a.n_sys(),
                  chain_b.n_sys(), shots_per_state};
    set.shots.reserve(2 * shots_per_state);
    append_state(set.shots, QubitState::ground, raw_output_means(encode_input(ground), params), factor,
                 shots_per_state, substream_seed(seed, cell, QubitState::ground));
    append_state(set.shots, QubitState::excited, raw_output_means(encode_input(excited), params), factor,
                 shots_per_state, substream_seed(seed, cell, QubitState::excited));
    return set;
}

ShotSet sample_shots(const ShotHeader &header) {
    // Chain gain, frequency and integration time do not enter the
    // amplifier-plane statistics; only N_sys does.
    const OutputChain chain_a(1.0, header.n_sys_a, 1.0, 1.0);
    const OutputChain chain_b(1.0, header.n_sys_b, 1.0, 1.0);
    const DispersiveInput g{header.nbar_in, header.theta, QubitState::ground};
    const DispersiveInput e{header.nbar_in, header.theta, QubitState::excited};
    return sample_shots(SqueezeParams::from_r(header.r), g, e, chain_a, chain_b, header.shots_per_state,
                        header.seed, header.cell);
}

std::vector<double> project(const ShotSet &set, Projection projection, double phi) {
    std::vector<double> out;
    out.reserve(set.shots.size());
    for (const Shot &s : set.shots) {
        switch (projection) {
            case Projection::i_a: out.push_back(s.quad.i_a); break;
            case Projection::q_a: out.push_back(s.quad.q_a); break;
            case Projection::i_b: out.push_back(s.quad.i_b); break;
            case Projection::q_b: out.push_back(s.quad.q_b); break;
            case Projection::i_ab: out.push_back(combine(s.quad, phi).i_ab); break;
            case Projection::q_ab: out.push_back(combine(s.quad, phi).q_ab); break;
        }
    }
    return out;
}

Eigen::Vector4d sample_mean(const ShotSet &set, QubitState state) {
    Eigen::Vector4d sum = Eigen::Vector4d::Zero();
    std::size_t n = 0;
    for (const Shot &s : set.shots) {
        if (s.label == state) {
            sum += s.quad.as_vector();
            ++n;
        }
    }
    if (n == 0) {
        throw DomainError(kModule, "no shots for state " + std::string(to_string(state)));
    }
    return sum / static_cast<double>(n);
}

Eigen::Matrix4d sample_covariance(const ShotSet &set, QubitState state) {
    const Eigen::Vector4d mean = sample_mean(set, state);
    Eigen::Matrix4d acc = Eigen::Matrix4d::Zero();
    std::size_t n = 0;
    for (const Shot &s : set.shots) {
        if (s.label == state) {
            const Eigen::Vector4d d = s.quad.as_vector() - mean;
            acc += d * d.transpose();
            ++n;
        }
    }
    if (n < 2) {
        throw DomainError(kModule, "need at least two shots for a covariance");
    }
    return acc / static_cast<double>(n - 1);
}

CombinedMeans combined_means(const ShotSet &set, double phi) {
    const Eigen::Vector4d g = sample_mean(set, QubitState::ground);
    const Eigen::Vector4d e = sample_mean(set, QubitState::excited);
    // combine() is linear, so the mean of combined shots is the combined mean.
    return {combine(QuadVector::from_vector(g), phi), combine(QuadVector::from_vector(e), phi)};
}

}  // namespace tmsr
