#include "tmsr/calibration.h"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "tmsr/constants.h"
#include "tmsr/errors.h"
#include "tmsr/signal_model.h"

namespace tmsr {

namespace {

constexpr std::string_view kModule = "calibration";
constexpr double kMinSpanDb = 3.0;

void require_gain(double gain) {
    if (!(gain >= 1.0)) {
        throw DomainError(kModule, "amplifier gain must be >= 1, got " + std::to_string(gain));
    }
}

}  // namespace

double model_noise_photons(double gain, double n_sys) {
    require_gain(gain);
    return gain / 2.0 + (gain - 1.0) / 2.0 + n_sys;
}

double model_noise_power(double gain, double g_sys, double n_sys, double omega, double t_int) {
    const double p0 = g_sys * (1.0 / t_int) * constants::hbar * omega;
    return p0 * model_noise_photons(gain, n_sys);
}

CalibrationResult fit_noise_vs_gain(std::span<const NoisePowerPoint> points, double omega, double t_int) {
    if (points.size() < 3) {
        throw DomainError(kModule, "noise calibration needs >= 3 points");
    }
    if (!(omega > 0.0) || !(t_int > 0.0)) {
        throw DomainError(kModule, "omega and T_int must be > 0");
    }
    const NoiseKind kind = points.front().kind;
    double g_min = points.front().gain;
    double g_max = points.front().gain;
    for (const NoisePowerPoint &p : points) {
        require_gain(p.gain);
        if (p.kind != kind) {
            throw DomainError(kModule, "noise points mix photon and power kinds");
        }
        if (!(p.value >= 0.0)) {
            throw DomainError(kModule, "noise values must be >= 0");
        }
        g_min = std::min(g_min, p.gain);
        g_max = std::max(g_max, p.gain);
    }
    if (g_max == g_min) {
        throw FitError(kModule, "rank-deficient design: all gains are equal");
    }
    if (10.0 * std::log10(g_max / g_min) < kMinSpanDb - 1e-9) {
        throw DomainError(kModule, "gain points must span >= 3 dB");
    }

    const auto n = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXd design(n, 2);
    Eigen::VectorXd y(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        design(k, 0) = points[k].gain;
        design(k, 1) = 1.0;
        y[k] = points[k].value;
    }
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < 2) {
        throw FitError(kModule, "rank-deficient design");
    }
    const Eigen::Vector2d coef = qr.solve(y);
    const double slope = coef[0];
    const double intercept = coef[1];
    if (!(slope > 0.0)) {
        throw FitError(kModule, "fitted noise slope is not positive");
    }

    CalibrationResult out;
    out.kind = kind;
    out.p0 = slope;
    out.n_sys = std::max(0.0, intercept / slope + 0.5);
    out.t_sys = system_temperature(out.n_sys, omega);
    out.bandwidth = 1.0 / t_int;
    if (kind == NoiseKind::watts) {
        out.g_sys = slope / (out.bandwidth * constants::hbar * omega);
    }
    const Eigen::VectorXd residuals = y - design * coef;
    out.residuals.assign(residuals.begin(), residuals.end());
    out.fit_rms = std::sqrt(residuals.squaredNorm() / static_cast<double>(n));
    return out;
}

double zero_point_temperature(double omega) { return constants::hbar * omega / (2.0 * constants::boltzmann); }

double noise_rise(double gain, double n_sys, double omega) {
    require_gain(gain);
    const double t_sys = system_temperature(n_sys, omega);
    const double t_q = zero_point_temperature(omega);
    return (t_sys + gain * t_q + (gain - 1.0) * t_q) / (t_sys + t_q);
}

double noise_rise_photons(double gain, double n_sys) {
    require_gain(gain);
    return (n_sys + gain - 0.5) / (n_sys + 0.5);
}

double snr_improvement(double gain, double n_sys, double omega) {
    require_gain(gain);
    const double t_sys = system_temperature(n_sys, omega);
    const double t_q = zero_point_temperature(omega);
    return (t_sys + t_q) / (t_sys / gain + t_q * (1.0 + (gain - 1.0) / gain));
}

double snr_improvement_limit(double n_sys, double omega) {
    const double t_sys = system_temperature(n_sys, omega);
    const double t_q = zero_point_temperature(omega);
    return (t_sys + t_q) / (2.0 * t_q);
}

double thermal_occupancy(double omega, double temperature) {
    if (!(temperature > 0.0)) {
        throw DomainError(kModule, "temperature must be > 0");
    }
    const double x = constants::hbar * omega / (2.0 * constants::boltzmann * temperature);
    return 0.5 / std::tanh(x);
}

}  // namespace tmsr
