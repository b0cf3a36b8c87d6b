#include "tmsr/backaction.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "tmsr/errors.h"
#include "tmsr/units.h"

namespace tmsr {

namespace {

constexpr std::string_view kModule = "backaction";
constexpr double kStrainedOccupancy = 0.1;

}  // namespace

double dephasing_rate(double t1, double t2e) {
    if (!(t1 > 0.0) || !(t2e > 0.0)) {
        throw DomainError(kModule, "T1 and T2E must be > 0");
    }
    if (t2e > 2.0 * t1) {
        throw DomainError(kModule, "unphysical record: T2E exceeds 2 T1");
    }
    return std::max(0.0, 1.0 / t2e - 1.0 / (2.0 * t1));
}

double dephasing_per_photon(double kappa, double chi) {
    if (!(kappa > 0.0) || !(chi > 0.0)) {
        throw DomainError(kModule, "kappa and chi must be > 0");
    }
    return kappa * chi * chi / (kappa * kappa + chi * chi);
}

ThermalPhotons nth_from_dephasing(double gamma_phi, double gamma_c) {
    if (!(gamma_c > 0.0)) {
        throw DomainError(kModule, "dephasing per photon must be > 0");
    }
    if (!(gamma_phi >= 0.0)) {
        throw DomainError(kModule, "dephasing rate must be >= 0");
    }
    const double n = gamma_phi / gamma_c;
    return {n, n > kStrainedOccupancy};
}

double nth_model(double gain, double isolation, double nth_a, double nth_b, double alpha_bar) {
    return isolation * (alpha_bar * nth_a + nth_b + 1.0) * gain - isolation * (nth_b + 1.0) + nth_a;
}

double nth_model_linear(double gain, double isolation, double nth_a) {
    return isolation * gain + (nth_a - isolation);
}

BackactionFit fit_isolation(std::span<const IsolationPoint> points, double alpha_bar) {
    if (points.size() < 2) {
        throw FitError(kModule, "isolation fit needs >= 2 points");
    }
    const double n = static_cast<double>(points.size());
    double mean_g = 0.0;
    double mean_n = 0.0;
    for (const IsolationPoint &p : points) {
        mean_g += p.gain;
        mean_n += p.nbar_th;
    }
    mean_g /= n;
    mean_n /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (const IsolationPoint &p : points) {
        sxx += (p.gain - mean_g) * (p.gain - mean_g);
        sxy += (p.gain - mean_g) * (p.nbar_th - mean_n);
    }
    if (!(sxx > 1e-12 * mean_g * mean_g)) {
        throw FitError(kModule, "degenerate design: need >= 2 distinct gains");
    }

    BackactionFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = mean_n - fit.slope * mean_g;
    if (fit.slope < 0.0) {
        throw FitError(kModule, "negative slope implies unphysical isolation");
    }
    if (fit.slope > 1.0) {
        throw FitError(kModule, "fitted isolation exceeds unity (L = " + std::to_string(fit.slope) + ")");
    }
    fit.isolation = fit.slope;
    fit.isolation_db = linear_to_db(fit.isolation);
    fit.nth_a = fit.intercept + fit.isolation;
    double ss = 0.0;
    for (const IsolationPoint &p : points) {
        const double r = p.nbar_th - (fit.slope * p.gain + fit.intercept);
        fit.residuals.push_back(r);
        ss += r * r;
    }
    fit.rms = std::sqrt(ss / n);
    fit.isolation_assumption_strained = fit.isolation * alpha_bar > 0.1;
    return fit;
}

std::vector<IsolationPoint> thermal_photons_from_records(std::span<const CoherenceRecord> records, double kappa,
                                                         double chi) {
    const double gamma_c = dephasing_per_photon(kappa, chi);
    std::vector<IsolationPoint> out;
    out.reserve(records.size());
    for (const CoherenceRecord &rec : records) {
        out.push_back({rec.gain, nth_from_dephasing(dephasing_rate(rec.t1, rec.t2e), gamma_c).nbar_th});
    }
    return out;
}

}  // namespace tmsr
