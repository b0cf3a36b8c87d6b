#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tmsr/squeeze.h"

namespace tmsr {

/// Power SNR of the phase-preserving readout on mode a,
///   R_a = (e^{2r} + e^{-2r} + 2) / ((e^{2r} + e^{-2r})/8 + N_sys,a/2) * I_in^2,
/// which equals 4G / ((2G - 1)/4 + N_sys,a/2) * I_in^2.
double snr_mode_a(double r, double n_sys_a, double i2_in);

/// Combined-mode SNR with the I quadrature antisqueezed (phi = pi),
///   R_ab,max = 2 e^{2r} / (e^{2r}/4 + N_sys,e/4) * I_in^2,  N_sys,e = N_sys,a + N_sys,b.
double snr_combined_max(double r, double n_sys_a, double n_sys_b, double i2_in);

/// Combined-mode SNR with the I quadrature squeezed (phi = 0).
double snr_combined_min(double r, double n_sys_a, double n_sys_b, double i2_in);

/// Assignment fidelity of two equal-width Gaussians, F = [1 + erf(sqrt(R/8))]/2.
/// Throws DomainError for R < 0.
double fidelity_from_snr(double snr);

/// 1 - F computed as erfc(sqrt(R/8))/2, which keeps precision as F -> 1.
double infidelity_from_snr(double snr);

struct MetricPoint {
    double gain = 1.0;
    double n_sys_a = 0.0;
    double n_sys_b = 0.0;
    double i2_in = 0.0;
    double r_a = 0.0;
    double r_ab_max = 0.0;
    double r_ab_min = 0.0;
    double f_a = 0.5;
    double f_ab_max = 0.5;
    double f_ab_min = 0.5;

    double n_sys_e() const { return n_sys_a + n_sys_b; }
    double snr_ratio() const { return r_ab_max / r_a; }
    /// F_ab,max - F_a, evaluated from the complementary error functions.
    double delta_fidelity() const;
};

MetricPoint evaluate_metrics(const SqueezeParams &params, double n_sys_a, double n_sys_b, double i2_in);

/// start, start+step, ... up to and including stop (within a 1e-9 step tolerance).
std::vector<double> linear_grid(double start, double stop, double step);

struct LandscapeRow {
    double gain_db = 0.0;
    double n_sys = 0.0;
    MetricPoint metrics;
};

/// Metric grid with equal chain noise on both modes. Rows are ordered gain
/// major, noise minor.
struct Landscape {
    std::vector<double> gains_db;
    std::vector<double> n_sys;
    double i2_in = 0.0;
    std::vector<LandscapeRow> rows;

    const LandscapeRow &at(std::size_t gain_index, std::size_t noise_index) const {
        return rows[gain_index * n_sys.size() + noise_index];
    }
    /// Rows of one gain column (exact match on a grid value within 1e-9 dB);
    /// throws DomainError if the gain is not on the grid.
    std::vector<LandscapeRow> cross_section(double gain_db) const;
};

Landscape landscape(std::span<const double> gains_db, std::span<const double> n_sys, double i2_in,
                    std::size_t jobs = 1);

/// Default axes: 0..24 dB in 0.25 dB steps and N_sys 0.5..50 in steps of 0.5.
std::vector<double> default_gain_grid_db();
std::vector<double> default_noise_grid();

}  // namespace tmsr
