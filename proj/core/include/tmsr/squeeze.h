#pragma once

#include <cstdint>
#include <string_view>

#include <Eigen/Core>

namespace tmsr {

enum class QubitState : std::uint8_t { ground = 0, excited = 1 };
enum class Mode : std::uint8_t { a = 0, b = 1 };

std::string_view to_string(QubitState state);

/// Two-mode squeeze of the amplifier. The pump phase is fixed to zero; any
/// pump-phase offset is absorbed by the relative rotation used in combine().
class SqueezeParams {
   public:
    SqueezeParams() = default;

    /// Throws DomainError for r < 0 or non-finite r.
    static SqueezeParams from_r(double r);
    /// Throws DomainError for G < 1.
    static SqueezeParams from_gain(double gain);
    static SqueezeParams from_gain_db(double gain_db);

    double r() const { return r_; }
    /// Power gain, cosh^2(r).
    double gain() const;
    double gain_db() const;
    double exp2r() const;

   private:
    explicit SqueezeParams(double r) : r_(r) {}
    double r_ = 0.0;
};

/// Inverse of G = cosh^2(r). Throws DomainError for G < 1.
double gain_to_r(double gain);

/// Field quadratures of modes a and b, in square-root-photon units
/// (vacuum variance 1/4 per quadrature). Used for both means and single shots.
struct QuadVector {
    double i_a = 0.0;
    double q_a = 0.0;
    double i_b = 0.0;
    double q_b = 0.0;

    Eigen::Vector4d as_vector() const { return {i_a, q_a, i_b, q_b}; }
    static QuadVector from_vector(const Eigen::Vector4d &v) { return {v[0], v[1], v[2], v[3]}; }

    friend bool operator==(const QuadVector &, const QuadVector &) = default;
};
using QuadMeans = QuadVector;

/// Index of each quadrature inside QuadVector::as_vector() and QuadCovariance.
enum QuadIndex : int { kIa = 0, kQa = 1, kIb = 2, kQb = 3 };

class QuadCovariance {
   public:
    QuadCovariance() : m_(Eigen::Matrix4d::Zero()) {}
    explicit QuadCovariance(const Eigen::Matrix4d &m) : m_(m) {}

    const Eigen::Matrix4d &matrix() const { return m_; }
    double operator()(int row, int col) const { return m_(row, col); }

    /// Variance of the linear combination w . x.
    double quadratic_form(const Eigen::Vector4d &w) const { return w.dot(m_ * w); }

   private:
    Eigen::Matrix4d m_;
};

struct CombinedQuad {
    double i_ab = 0.0;
    double q_ab = 0.0;
    double phi = 0.0;
};

/// Output means in the amplifier's own frame, straight from the squeeze
/// transform with zero pump phase:
///   I_a = cosh r I_a,in + sinh r I_b,in     Q_a = cosh r Q_a,in - sinh r Q_b,in
///   I_b = cosh r I_b,in + sinh r I_a,in     Q_b = cosh r Q_b,in - sinh r Q_a,in
/// The nonlocal identities I_a - I_b = e^{-r}(I_a,in - I_b,in) etc. hold here.
QuadMeans raw_output_means(const QuadMeans &input, const SqueezeParams &params);

/// Fixed rotation of mode b by pi. This is the first processing step, which
/// puts the g/e centroids of the idler output symmetrically about +Q.
QuadVector align_idler(const QuadVector &raw);

/// Output means after idler alignment, the frame every readout statistic uses.
/// With a vacuum idler: I_a = sqrt(G) I_in, Q_a = sqrt(G) Q_in,
/// I_b = -sqrt(G-1) I_in, Q_b = +sqrt(G-1) Q_in.
QuadMeans propagate_means(const QuadMeans &input, const SqueezeParams &params);

/// Covariance of the output quadratures in the amplifier frame for vacuum
/// inputs plus classical chain noise N_sys,k/2 on each quadrature of mode k.
/// Throws DomainError on negative noise.
QuadCovariance output_covariance(const SqueezeParams &params, double n_sys_a, double n_sys_b);

/// output_covariance() expressed in the idler-aligned frame (cross-mode terms flip sign).
QuadCovariance aligned_covariance(const SqueezeParams &params, double n_sys_a, double n_sys_b);

/// Rotates (I_b, Q_b) by phi and adds it to (I_a, Q_a).
CombinedQuad combine(const QuadVector &point, double phi);

/// I^2 + Q^2 of the selected mode.
double nbar_mode(const QuadMeans &means, Mode mode);

/// Fictitious photon number of the combined mode, I_ab^2 + Q_ab^2.
double nbar_combined(const QuadMeans &means, double phi);

/// Closed forms for the combined photon number given input quadrature powers.
double nbar_combined_pi(double i2_in, double q2_in, const SqueezeParams &params);
double nbar_combined_zero(double i2_in, double q2_in, const SqueezeParams &params);

}  // namespace tmsr
