#pragma once

#include <optional>
#include <span>
#include <vector>

namespace tmsr {

enum class NoiseKind { photons, watts };

/// One point of a noise-power-versus-amplifier-gain measurement.
struct NoisePowerPoint {
    double gain = 1.0;  // linear
    double value = 0.0;
    NoiseKind kind = NoiseKind::watts;
};

struct CalibrationResult {
    NoiseKind kind = NoiseKind::watts;
    double n_sys = 0.0;
    double t_sys = 0.0;  // kelvin
    /// Watts per photon for power data, dimensionless slope for photon data.
    double p0 = 0.0;
    /// Chain gain P_0 / (BW hbar omega); only defined for power data.
    std::optional<double> g_sys;
    double bandwidth = 0.0;  // Hz, 1 / T_int
    double fit_rms = 0.0;
    std::vector<double> residuals;
};

/// Output noise in photons, G/2 + (G - 1)/2 + N_sys. Throws DomainError for G < 1.
double model_noise_photons(double gain, double n_sys);

/// Output noise power in watts, P_0 * model_noise_photons(), P_0 = G_sys hbar omega / T_int.
double model_noise_power(double gain, double g_sys, double n_sys, double omega, double t_int);

/// Linear least squares of value = P_0 G + P_0 (N_sys - 1/2) in (P_0, P_0 (N_sys - 1/2)),
/// then back-substitution; N_sys is clamped at 0.
/// Needs >= 3 points of one kind spanning >= 3 dB of gain (DomainError) and a
/// nondegenerate design (FitError).
CalibrationResult fit_noise_vs_gain(std::span<const NoisePowerPoint> points, double omega, double t_int);

/// Zero-point temperature hbar omega / 2 k_B.
double zero_point_temperature(double omega);

/// Noise rise G_N = (T_sys + G T_Q + (G - 1) T_Q) / (T_sys + T_Q).
double noise_rise(double gain, double n_sys, double omega);
/// Same ratio in photon units, (N_sys + G - 1/2) / (N_sys + 1/2).
double noise_rise_photons(double gain, double n_sys);

/// SNR improvement G / G_N = (T_sys + T_Q) / (T_sys/G + T_Q [1 + (G - 1)/G]).
double snr_improvement(double gain, double n_sys, double omega);
/// Large-gain limit of snr_improvement(), (T_sys + T_Q) / (2 T_Q) = N_sys + 1/2.
double snr_improvement_limit(double n_sys, double omega);

/// Mean thermal-plus-vacuum occupancy (1/2) coth(hbar omega / 2 k_B T).
double thermal_occupancy(double omega, double temperature);

}  // namespace tmsr
