#include "tmsr/squeeze.h"

#include <cmath>

#include "tmsr/errors.h"
#include "tmsr/units.h"

namespace tmsr {

namespace {

constexpr std::string_view kModule = "squeeze_core";

}  // namespace

std::string_view to_string(QubitState state) {
    return state == QubitState::ground ? "g" : "e";
}

SqueezeParams SqueezeParams::from_r(double r) {
    if (!std::isfinite(r) || r < 0.0) {
        throw DomainError(kModule, "squeezing parameter must be finite and >= 0, got " + std::to_string(r));
    }
    return SqueezeParams(r);
}

SqueezeParams SqueezeParams::from_gain(double gain) { return SqueezeParams(gain_to_r(gain)); }

SqueezeParams SqueezeParams::from_gain_db(double gain_db) { return from_gain(db_to_linear(gain_db)); }

double SqueezeParams::gain() const {
    const double c = std::cosh(r_);
    return c * c;
}

double SqueezeParams::gain_db() const { return linear_to_db(gain()); }

double SqueezeParams::exp2r() const { return std::exp(2.0 * r_); }

double gain_to_r(double gain) {
    if (!std::isfinite(gain) || gain < 1.0) {
        throw DomainError(kModule, "power gain must be >= 1, got " + std::to_string(gain));
    }
    // asinh keeps full precision near G = 1 where acosh(sqrt(G)) does not.
    return std::asinh(std::sqrt(gain - 1.0));
}

QuadMeans raw_output_means(const QuadMeans &input, const SqueezeParams &params) {
    const double c = std::cosh(params.r());
    const double s = std::sinh(params.r());
    return {
        c * input.i_a + s * input.i_b,
        c * input.q_a - s * input.q_b,
        c * input.i_b + s * input.i_a,
        c * input.q_b - s * input.q_a,
    };
}

QuadVector align_idler(const QuadVector &raw) { return {raw.i_a, raw.q_a, -raw.i_b, -raw.q_b}; }

QuadMeans propagate_means(const QuadMeans &input, const SqueezeParams &params) {
    return align_idler(raw_output_means(input, params));
}

QuadCovariance output_covariance(const SqueezeParams &params, double n_sys_a, double n_sys_b) {
    if (!(n_sys_a >= 0.0) || !(n_sys_b >= 0.0)) {
        throw DomainError(kModule, "chain noise photons must be >= 0");
    }
    const double diag = std::cosh(2.0 * params.r()) / 4.0;
    const double cross = std::sinh(2.0 * params.r()) / 4.0;

    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(kIa, kIa) = diag + n_sys_a / 2.0;
    m(kQa, kQa) = diag + n_sys_a / 2.0;
    m(kIb, kIb) = diag + n_sys_b / 2.0;
    m(kQb, kQb) = diag + n_sys_b / 2.0;
    m(kIa, kIb) = m(kIb, kIa) = cross;
    m(kQa, kQb) = m(kQb, kQa) = -cross;
    return QuadCovariance(m);
}

QuadCovariance aligned_covariance(const SqueezeParams &params, double n_sys_a, double n_sys_b) {
    const Eigen::Vector4d flip(1.0, 1.0, -1.0, -1.0);
    const Eigen::Matrix4d p = flip.asDiagonal();
    return QuadCovariance(p * output_covariance(params, n_sys_a, n_sys_b).matrix() * p);
}

CombinedQuad combine(const QuadVector &point, double phi) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    const double i_rot = c * point.i_b - s * point.q_b;
    const double q_rot = s * point.i_b + c * point.q_b;
    return {point.i_a + i_rot, point.q_a + q_rot, phi};
}

double nbar_mode(const QuadMeans &means, Mode mode) {
    if (mode == Mode::a) {
        return means.i_a * means.i_a + means.q_a * means.q_a;
    }
    return means.i_b * means.i_b + means.q_b * means.q_b;
}

double nbar_combined(const QuadMeans &means, double phi) {
    const CombinedQuad c = combine(means, phi);
    return c.i_ab * c.i_ab + c.q_ab * c.q_ab;
}

double nbar_combined_pi(double i2_in, double q2_in, const SqueezeParams &params) {
    const double e = params.exp2r();
    return e * i2_in + q2_in / e;
}

double nbar_combined_zero(double i2_in, double q2_in, const SqueezeParams &params) {
    const double e = params.exp2r();
    return i2_in / e + e * q2_in;
}

}  // namespace tmsr
