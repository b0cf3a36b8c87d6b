#include "tmsr/metrics.h"

#include <cmath>

#include "tmsr/errors.h"
#include "tmsr/parallel.h"

namespace tmsr {

namespace {

constexpr std::string_view kModule = "metrics_analytic";

void require_nonnegative(double r, double n_a, double n_b, double i2) {
    if (!(r >= 0.0) || !(n_a >= 0.0) || !(n_b >= 0.0) || !(i2 >= 0.0)) {
        throw DomainError(kModule, "r, chain noise and I_in^2 must all be >= 0");
    }
}

}  // namespace

double snr_mode_a(double r, double n_sys_a, double i2_in) {
    require_nonnegative(r, n_sys_a, 0.0, i2_in);
    const double e = std::exp(2.0 * r);
    const double sum = e + 1.0 / e;
    return (sum + 2.0) / (sum / 8.0 + n_sys_a / 2.0) * i2_in;
}

double snr_combined_max(double r, double n_sys_a, double n_sys_b, double i2_in) {
    require_nonnegative(r, n_sys_a, n_sys_b, i2_in);
    const double e = std::exp(2.0 * r);
    return 2.0 * e / (e / 4.0 + (n_sys_a + n_sys_b) / 4.0) * i2_in;
}

double snr_combined_min(double r, double n_sys_a, double n_sys_b, double i2_in) {
    require_nonnegative(r, n_sys_a, n_sys_b, i2_in);
    const double e = std::exp(-2.0 * r);
    return 2.0 * e / (e / 4.0 + (n_sys_a + n_sys_b) / 4.0) * i2_in;
}

double fidelity_from_snr(double snr) {
    if (!(snr >= 0.0)) {
        throw DomainError(kModule, "SNR must be >= 0, got " + std::to_string(snr));
    }
    return 0.5 * (1.0 + std::erf(std::sqrt(snr / 8.0)));
}

double infidelity_from_snr(double snr) {
    if (!(snr >= 0.0)) {
        throw DomainError(kModule, "SNR must be >= 0, got " + std::to_string(snr));
    }
    return 0.5 * std::erfc(std::sqrt(snr / 8.0));
}

double MetricPoint::delta_fidelity() const { return infidelity_from_snr(r_a) - infidelity_from_snr(r_ab_max); }

MetricPoint evaluate_metrics(const SqueezeParams &params, double n_sys_a, double n_sys_b, double i2_in) {
    MetricPoint p;
    p.gain = params.gain();
    p.n_sys_a = n_sys_a;
    p.n_sys_b = n_sys_b;
    p.i2_in = i2_in;
    p.r_a = snr_mode_a(params.r(), n_sys_a, i2_in);
    p.r_ab_max = snr_combined_max(params.r(), n_sys_a, n_sys_b, i2_in);
    p.r_ab_min = snr_combined_min(params.r(), n_sys_a, n_sys_b, i2_in);
    p.f_a = fidelity_from_snr(p.r_a);
    p.f_ab_max = fidelity_from_snr(p.r_ab_max);
    p.f_ab_min = fidelity_from_snr(p.r_ab_min);
    return p;
}

std::vector<double> linear_grid(double start, double stop, double step) {
    if (!(step > 0.0) || !(stop >= start)) {
        throw DomainError(kModule, "grid needs step > 0 and stop >= start");
    }
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        out[k] = start + static_cast<double>(k) * step;
    }
    return out;
}

std::vector<LandscapeRow> Landscape::cross_section(double gain_db) const {
    for (std::size_t gi = 0; gi < gains_db.size(); ++gi) {
        if (std::abs(gains_db[gi] - gain_db) < 1e-9) {
            return {rows.begin() + static_cast<std::ptrdiff_t>(gi * n_sys.size()),
                    rows.begin() + static_cast<std::ptrdiff_t>((gi + 1) * n_sys.size())};
        }
    }
    throw DomainError(kModule, "gain " + std::to_string(gain_db) + " dB is not on the landscape grid");
}

Landscape landscape(std::span<const double> gains_db, std::span<const double> n_sys, double i2_in,
                    std::size_t jobs) {
    if (gains_db.empty() || n_sys.empty()) {
        throw DomainError(kModule, "landscape grids must be nonempty");
    }
    Landscape out{{gains_db.begin(), gains_db.end()}, {n_sys.begin(), n_sys.end()}, i2_in, {}};
    out.rows.resize(gains_db.size() * n_sys.size());
    parallel_for(gains_db.size(), jobs, [&](std::size_t gi) {
        const SqueezeParams params = SqueezeParams::from_gain_db(gains_db[gi]);
        for (std::size_t ni = 0; ni < n_sys.size(); ++ni) {
            out.rows[gi * n_sys.size() + ni] = {gains_db[gi], n_sys[ni],
                                                evaluate_metrics(params, n_sys[ni], n_sys[ni], i2_in)};
        }
    });
    return out;
}

std::vector<double> default_gain_grid_db() { return linear_grid(0.0, 24.0, 0.25); }

std::vector<double> default_noise_grid() { return linear_grid(0.5, 50.0, 0.5); }

}  // namespace tmsr
