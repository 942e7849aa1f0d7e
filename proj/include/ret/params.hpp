#pragma once

// Physical parameters of the driven donor-acceptor model and the closed-form
// coupling and rate formulas that feed the master equation.
//
// Units: every frequency and rate is dimensionless, measured in units of the
// cavity/laser frequency nu (nu = 1). Times are t*nu.

#include <complex>

#include <Eigen/Core>

namespace ret {

using Vec3 = Eigen::Vector3d;

/// Separation and orientation of the two transition dipoles.
///
/// `xi` is the formula argument nu*|r2 - r1|. `theta` is the angle between the
/// first dipole axis and the displacement direction `r_hat`.
class DipoleGeometry {
 public:
  /// Parallel dipoles at angle `theta` to the displacement axis.
  static DipoleGeometry parallel(double xi, double theta);

  /// General orientation; all vectors must already be unit length.
  static DipoleGeometry from_vectors(double xi, const Vec3& p_hat_1,
                                     const Vec3& p_hat_2, const Vec3& r_hat);

  double xi() const { return xi_; }
  double theta() const { return theta_; }
  const Vec3& p_hat_1() const { return p1_; }
  const Vec3& p_hat_2() const { return p2_; }
  const Vec3& r_hat() const { return r_; }

 private:
  DipoleGeometry(double xi, double theta, Vec3 p1, Vec3 p2, Vec3 r)
      : xi_(xi), theta_(theta), p1_(std::move(p1)), p2_(std::move(p2)), r_(std::move(r)) {}

  double xi_;
  double theta_;
  Vec3 p1_;
  Vec3 p2_;
  Vec3 r_;
};

/// Individual, collective and inhomogeneous rates of the two molecules.
class RadiativeRates {
 public:
  /// Throws InvalidParameter on negative rates or gamma_h > sqrt(gamma11*gamma22).
  RadiativeRates(double gamma11, double gamma22, double gamma_h = 0.0,
                 double gamma_inh1 = 0.0, double gamma_inh2 = 0.0);

  /// Equal individual rates, no collective or inhomogeneous part.
  static RadiativeRates symmetric(double gamma) { return {gamma, gamma}; }

  double gamma11() const { return gamma11_; }
  double gamma22() const { return gamma22_; }
  double gamma_h() const { return gamma_h_; }
  double gamma_inh1() const { return gamma_inh1_; }
  double gamma_inh2() const { return gamma_inh2_; }

  double geometric_mean() const;

 private:
  double gamma11_;
  double gamma22_;
  double gamma_h_;
  double gamma_inh1_;
  double gamma_inh2_;
};

/// Lorentzian vibrational bath of one molecule (k_B = hbar = 1).
struct BathSpec {
  double lambda = 0.0;       ///< exciton-vibration coupling
  double cutoff = 0.0;       ///< Lorentzian cutoff
  double temperature = 0.0;

  void validate() const;
  /// True when the high-temperature limit applies (cutoff < temperature).
  bool high_temperature() const { return cutoff < temperature; }
};

/// Classical cavity drive that sets the Rabi frequency.
struct CavityDrive {
  double power = 0.0;
  double kappa_c = 1.0;      ///< cavity decay rate
  double omega_d = 1.0;      ///< drive frequency
  double nu = 1.0;           ///< cavity frequency
  double mode_volume = 1.0;
  double dipole_ac = 0.0;    ///< donor transition dipole magnitude

  void validate() const;
};

/// Dimensionless parameters of the rotated-frame generator.
struct SystemParams {
  double delta1 = 0.0;    ///< donor detuning omega_1 - nu
  double delta2 = 0.0;    ///< acceptor detuning omega_2 - nu
  double rabi = 0.0;      ///< Omega
  double coupling = 0.0;  ///< dipole-dipole coupling Delta
  double gamma = 1e-4;    ///< total individual decay, Gamma_11 = Gamma_22
  double gamma_h = 1e-9;  ///< collective decay Gamma_12
  double n_nu = 0.0;      ///< thermal photon occupation at nu

  /// omega_1 - omega_2, the characteristic Rabi frequency R*.
  double r_star() const { return delta1 - delta2; }

  /// Full invariant: gamma > 0, 0 <= gamma_h <= gamma, n_nu >= 0, all finite.
  void validate() const;

  /// Admissibility for generator construction; also allows gamma == 0 so the
  /// closed (unitary) limit can be represented.
  void validate_admissible() const;

  /// Convenience: delta2 set from R* = delta1 - delta2.
  static SystemParams resonant(double delta1, double r_star, double rabi, double coupling,
                               double gamma, double gamma_h, double n_nu = 0.0);
};

/// Geometry factor f(xi) of the collective decay; |f| <= 1.
double collective_factor(const DipoleGeometry& geom);

/// Collective decay Gamma_12 = f(xi) sqrt(Gamma_11 Gamma_22) from radiative rates.
double collective_decay(const DipoleGeometry& geom, const RadiativeRates& radiative);

/// Resonant dipole-dipole coupling Delta(xi, theta). Pass radiative rates.
double rddi_coupling(const DipoleGeometry& geom, const RadiativeRates& radiative);

/// Near-zone limit 3 Gamma / (4 xi^3).
double near_zone_coupling(double gamma_radiative, double xi);

/// Spontaneous emission rate P^2 nu^3 / (3 pi).
double radiative_rate(double dipole_moment, double nu);

/// Dephasing rate S(Lambda) coth(Lambda / 2T) of a Lorentzian bath.
double inhomogeneous_rate(const BathSpec& bath);

/// High-temperature limit 2 lambda T / Lambda. Writes a warning to stderr when
/// the bath is not in the high-temperature regime.
double inhomogeneous_rate_high_temperature(const BathSpec& bath);

/// Drive amplitude sqrt(P kappa / omega_d).
double drive_amplitude(const CavityDrive& cav);

/// Steady cavity amplitude E / (kappa/2 - i (omega_d - nu)).
std::complex<double> cavity_amplitude(const CavityDrive& cav);

/// Single-photon coupling g = P_ac sqrt(nu / 2V).
double cavity_coupling(const CavityDrive& cav);

/// Omega = g |<a_c>|.
double rabi_frequency(const CavityDrive& cav);

/// Dressed-state splitting sqrt(Omega^2 + delta1^2 / 4).
double dressed_splitting(double omega, double delta1);

/// Donor detuning (delta2^2 - Omega^2) / delta2 at which a dressed level meets
/// the acceptor. Throws std::domain_error for delta2 == 0.
double dressed_resonance_detuning(double omega, double delta2);

/// Solution of delta1 = (delta2^2 - Omega^2)/delta2 with delta2 = delta1 - R*.
double self_consistent_resonance_detuning(double omega, double r_star);

}  // namespace ret
