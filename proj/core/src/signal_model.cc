#include "tmsr/signal_model.h"

#include <cmath>

#include "tmsr/constants.h"
#include "tmsr/errors.h"

namespace tmsr {

namespace {

constexpr std::string_view kModule = "signal_model";

}  // namespace

DispersiveInput DispersiveInput::from_resonator(double nbar_resonator, double alpha_bar, double theta,
                                                QubitState state) {
    if (!(alpha_bar > 0.0 && alpha_bar <= 1.0)) {
        throw DomainError(kModule, "insertion-loss factor must lie in (0, 1]");
    }
    if (!(nbar_resonator >= 0.0)) {
        throw DomainError(kModule, "photon number must be >= 0");
    }
    return {alpha_bar * nbar_resonator, theta, state};
}

QuadMeans encode_input(double nbar_in, double theta, QubitState state) {
    if (!(nbar_in >= 0.0)) {
        throw DomainError(kModule, "photon number must be >= 0, got " + std::to_string(nbar_in));
    }
    const double amplitude = std::sqrt(nbar_in);
    const double sign = state == QubitState::ground ? 1.0 : -1.0;
    return {sign * std::sin(theta / 2.0) * amplitude, std::cos(theta / 2.0) * amplitude, 0.0, 0.0};
}

QuadMeans encode_input(const DispersiveInput &input) {
    return encode_input(input.nbar_in, input.theta, input.state);
}

OutputChain::OutputChain(double g_sys, double n_sys, double omega, double t_int, double r_load)
    : g_sys_(g_sys), n_sys_(n_sys), omega_(omega), t_int_(t_int), r_load_(r_load) {
    if (!(g_sys > 0.0) || !(n_sys >= 0.0) || !(omega > 0.0) || !(t_int > 0.0) || !(r_load > 0.0)) {
        throw DomainError(kModule, "output chain requires G_sys > 0, N_sys >= 0, omega > 0, T_int > 0, R > 0");
    }
}

double OutputChain::photon_energy() const { return constants::hbar * omega_; }

double OutputChain::conversion_factor() const { return t_int_ / (r_load_ * photon_energy()); }

double OutputChain::system_temperature() const { return tmsr::system_temperature(n_sys_, omega_); }

double system_temperature(double n_sys, double omega) {
    return n_sys * constants::hbar * omega / constants::boltzmann;
}

double noise_photons_from_temperature(double t_sys, double omega) {
    return t_sys * constants::boltzmann / (constants::hbar * omega);
}

IqPair volts_to_photon_units(IqPair raw, const OutputChain &chain) {
    const double k = std::sqrt(chain.conversion_factor());
    return {k * raw.i, k * raw.q};
}

IqPair photon_units_to_volts(IqPair room_temperature, const OutputChain &chain) {
    const double k = std::sqrt(chain.conversion_factor());
    return {room_temperature.i / k, room_temperature.q / k};
}

IqPair refer_to_amplifier_output(IqPair room_temperature, const OutputChain &chain) {
    const double k = std::sqrt(chain.g_sys());
    return {room_temperature.i / k, room_temperature.q / k};
}

IqPair refer_to_room_temperature(IqPair amplifier_plane, const OutputChain &chain) {
    const double k = std::sqrt(chain.g_sys());
    return {amplifier_plane.i * k, amplifier_plane.q * k};
}

IqPair rotate(IqPair p, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * p.i - s * p.q, s * p.i + c * p.q};
}

double alignment_angle(IqPair centroid_g, IqPair centroid_e) {
    const double mi = 0.5 * (centroid_g.i + centroid_e.i);
    const double mq = 0.5 * (centroid_g.q + centroid_e.q);
    if (mi == 0.0 && mq == 0.0) {
        throw DomainError(kModule, "centroid midpoint is at the origin; alignment is undefined");
    }
    return constants::pi / 2.0 - std::atan2(mq, mi);
}

QuadVector process_raw(const QuadVector &volts, const ProcessingFrame &frame) {
    auto line = [](IqPair raw, const OutputChain &chain, double rotation) {
        return refer_to_amplifier_output(volts_to_photon_units(rotate(raw, rotation), chain), chain);
    };
    const IqPair a = line({volts.i_a, volts.q_a}, frame.chain_a, frame.rotation_a);
    const IqPair b = line({volts.i_b, volts.q_b}, frame.chain_b, frame.rotation_b);
    return {a.i, a.q, b.i, b.q};
}

}  // namespace tmsr
