#pragma once

#include <span>
#include <vector>

namespace tmsr {

/// Coherence times of the qubit measured at one amplifier gain.
struct CoherenceRecord {
    double gain = 1.0;  // linear
    double t1 = 0.0;    // s
    double t2e = 0.0;   // s
};

/// Gamma_phi = 1/T2E - 1/(2 T1). Throws DomainError for T2E > 2 T1 or nonpositive times.
double dephasing_rate(double t1, double t2e);

/// Measurement-induced dephasing per thermal photon, kappa chi^2 / (kappa^2 + chi^2).
/// Both rates are angular (rad/s).
double dephasing_per_photon(double kappa, double chi);

struct ThermalPhotons {
    double nbar_th = 0.0;
    /// Set when nbar_th > 0.1, where the small-occupancy relation is strained.
    bool approximation_strained = false;
};

ThermalPhotons nth_from_dephasing(double gamma_phi, double gamma_c);

/// Full thermal-photon model,
///   n_th = L [alpha n_th,a + n_th,b + 1] G - L [n_th,b + 1] + n_th,a.
double nth_model(double gain, double isolation, double nth_a, double nth_b, double alpha_bar = 1.0);

/// Small-occupancy form, n_th = L G + (n_th,a - L).
double nth_model_linear(double gain, double isolation, double nth_a);

struct IsolationPoint {
    double gain = 1.0;  // linear
    double nbar_th = 0.0;
};

struct BackactionFit {
    double isolation = 0.0;  // L, linear power ratio
    double isolation_db = 0.0;
    double nth_a = 0.0;
    double slope = 0.0;
    double intercept = 0.0;
    double rms = 0.0;
    std::vector<double> residuals;
    /// Set when L * alpha_bar > 0.1, where the model's L alpha << 1 assumption fails.
    bool isolation_assumption_strained = false;
};

/// Linear regression of n_th on G: slope -> L, intercept -> n_th,a - L.
/// Needs >= 2 distinct gains; a negative slope or L > 1 is a FitError.
BackactionFit fit_isolation(std::span<const IsolationPoint> points, double alpha_bar = 1.0);

/// Thermal photons for each record via dephasing_rate() / dephasing_per_photon().
std::vector<IsolationPoint> thermal_photons_from_records(std::span<const CoherenceRecord> records, double kappa,
                                                         double chi);

}  // namespace tmsr
