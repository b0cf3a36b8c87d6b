#pragma once

#include "tmsr/squeeze.h"

namespace tmsr {

/// Coherent readout tone reaching the amplifier input. The g and e responses
/// sit symmetrically about the +Q axis, separated by the dispersive angle theta.
struct DispersiveInput {
    double nbar_in = 0.0;  // photons at the amplifier input
    double theta = 0.0;    // radians
    QubitState state = QubitState::ground;

    /// nbar_in = alpha_bar * nbar_resonator, with 0 < alpha_bar <= 1.
    static DispersiveInput from_resonator(double nbar_resonator, double alpha_bar, double theta, QubitState state);
};

/// Input-plane means: I = +-sin(theta/2) sqrt(nbar) (+ for g), Q = cos(theta/2) sqrt(nbar),
/// idler means zero. Throws DomainError for negative photon numbers.
QuadMeans encode_input(double nbar_in, double theta, QubitState state);
QuadMeans encode_input(const DispersiveInput &input);

struct IqPair {
    double i = 0.0;
    double q = 0.0;
};

/// Classical output chain of one amplifier mode. Immutable once built.
class OutputChain {
   public:
    /// Throws DomainError unless g_sys > 0, n_sys >= 0, omega > 0, t_int > 0, r_load > 0.
    OutputChain(double g_sys, double n_sys, double omega, double t_int, double r_load = 50.0);

    double g_sys() const { return g_sys_; }
    double n_sys() const { return n_sys_; }
    double omega() const { return omega_; }
    double t_int() const { return t_int_; }
    double r_load() const { return r_load_; }

    double photon_energy() const;
    /// gamma = T_int / (R hbar omega), in 1/V^2.
    double conversion_factor() const;
    /// T_sys = N_sys hbar omega / k_B.
    double system_temperature() const;

   private:
    double g_sys_;
    double n_sys_;
    double omega_;
    double t_int_;
    double r_load_;
};

double system_temperature(double n_sys, double omega);
double noise_photons_from_temperature(double t_sys, double omega);

IqPair volts_to_photon_units(IqPair raw, const OutputChain &chain);
IqPair photon_units_to_volts(IqPair room_temperature, const OutputChain &chain);
IqPair refer_to_amplifier_output(IqPair room_temperature, const OutputChain &chain);
IqPair refer_to_room_temperature(IqPair amplifier_plane, const OutputChain &chain);

/// Rotation of the IQ plane by angle (counter-clockwise).
IqPair rotate(IqPair p, double angle);

/// Rotation that moves the midpoint of the two centroids onto the +Q axis.
/// Throws DomainError when the midpoint is at the origin.
double alignment_angle(IqPair centroid_g, IqPair centroid_e);

/// Per-line settings for turning integrated voltages into aligned
/// amplifier-output quadratures.
struct ProcessingFrame {
    OutputChain chain_a;
    OutputChain chain_b;
    double rotation_a = 0.0;
    double rotation_b = 0.0;
};

/// Rotate each line by its fixed phase, convert volts to photon units and
/// refer the result back to the amplifier output. The relative rotation and
/// combination that follow are combine().
QuadVector process_raw(const QuadVector &volts, const ProcessingFrame &frame);

}  // namespace tmsr
