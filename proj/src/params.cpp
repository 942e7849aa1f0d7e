#include "ret/params.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ret/errors.hpp"

namespace ret {

namespace {

// Below this separation f(xi) uses its Taylor series; sin/xi^3 - cos/xi^2
// cancels to ~6 lost digits near xi = 1e-3.
constexpr double kSeriesSwitch = 1e-2;
constexpr double kUnitTol = 1e-12;

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidParameter(what);
}

bool finite_all(std::initializer_list<double> xs) {
  return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

// sin(x)/x
double sinc(double x) {
  if (x < kSeriesSwitch) {
    const double x2 = x * x;
    return 1.0 + x2 * (-1.0 / 6 + x2 * (1.0 / 120 + x2 * (-1.0 / 5040 +
                 x2 * (1.0 / 362880 + x2 * (-1.0 / 39916800)))));
  }
  return std::sin(x) / x;
}

// sin(x)/x^3 - cos(x)/x^2
double near_field_kernel(double x) {
  if (x < kSeriesSwitch) {
    const double x2 = x * x;
    return 1.0 / 3 + x2 * (-1.0 / 30 + x2 * (1.0 / 840 + x2 * (-1.0 / 45360 +
                     x2 * (1.0 / 3991680 + x2 * (-1.0 / 518918400)))));
  }
  return std::sin(x) / (x * x * x) - std::cos(x) / (x * x);
}

}  // namespace

DipoleGeometry DipoleGeometry::parallel(double xi, double theta) {
  require(std::isfinite(xi) && xi > 0.0, "dipole separation xi must be > 0");
  require(std::isfinite(theta) && theta >= 0.0 && theta <= std::numbers::pi,
          "dipole angle theta must lie in [0, pi]");
  const Vec3 r(0.0, 0.0, 1.0);
  const Vec3 p(std::sin(theta), 0.0, std::cos(theta));
  return DipoleGeometry(xi, theta, p, p, r);
}

DipoleGeometry DipoleGeometry::from_vectors(double xi, const Vec3& p_hat_1, const Vec3& p_hat_2,
                                            const Vec3& r_hat) {
  require(std::isfinite(xi) && xi > 0.0, "dipole separation xi must be > 0");
  for (const Vec3* v : {&p_hat_1, &p_hat_2, &r_hat}) {
    require(v->allFinite() && std::abs(v->norm() - 1.0) <= kUnitTol,
            "dipole geometry vectors must have unit norm");
  }
  const double c = std::clamp(p_hat_1.dot(r_hat), -1.0, 1.0);
  return DipoleGeometry(xi, std::acos(c), p_hat_1, p_hat_2, r_hat);
}

RadiativeRates::RadiativeRates(double gamma11, double gamma22, double gamma_h, double gamma_inh1,
                               double gamma_inh2)
    : gamma11_(gamma11),
      gamma22_(gamma22),
      gamma_h_(gamma_h),
      gamma_inh1_(gamma_inh1),
      gamma_inh2_(gamma_inh2) {
  require(finite_all({gamma11, gamma22, gamma_h, gamma_inh1, gamma_inh2}), "rates must be finite");
  require(gamma11 >= 0 && gamma22 >= 0 && gamma_h >= 0 && gamma_inh1 >= 0 && gamma_inh2 >= 0,
          "rates must be non-negative");
  require(gamma_h <= geometric_mean() * (1.0 + 1e-12),
          "collective decay exceeds sqrt(gamma11 * gamma22)");
}

double RadiativeRates::geometric_mean() const { return std::sqrt(gamma11_ * gamma22_); }

void BathSpec::validate() const {
  require(finite_all({lambda, cutoff, temperature}) && lambda > 0 && cutoff > 0 && temperature > 0,
          "bath coupling, cutoff and temperature must be > 0");
}

void CavityDrive::validate() const {
  require(finite_all({power, kappa_c, omega_d, nu, mode_volume, dipole_ac}),
          "cavity parameters must be finite");
  require(power >= 0, "drive power must be >= 0");
  require(kappa_c > 0, "cavity decay rate must be > 0");
  require(omega_d > 0, "drive frequency must be > 0");
  require(nu > 0, "cavity frequency must be > 0");
  require(mode_volume > 0, "mode volume must be > 0");
  require(dipole_ac >= 0, "dipole magnitude must be >= 0");
}

void SystemParams::validate_admissible() const {
  require(finite_all({delta1, delta2, rabi, coupling, gamma, gamma_h, n_nu}),
          "system parameters must be finite");
  require(gamma >= 0, "gamma must be >= 0");
  require(gamma_h >= 0, "gamma_h must be >= 0");
  require(gamma_h <= gamma, "gamma_h must not exceed gamma");
  require(n_nu >= 0, "n_nu must be >= 0");
}

void SystemParams::validate() const {
  validate_admissible();
  require(gamma > 0, "gamma must be > 0");
}

SystemParams SystemParams::resonant(double delta1, double r_star, double rabi, double coupling,
                                    double gamma, double gamma_h, double n_nu) {
  SystemParams p;
  p.delta1 = delta1;
  p.delta2 = delta1 - r_star;
  p.rabi = rabi;
  p.coupling = coupling;
  p.gamma = gamma;
  p.gamma_h = gamma_h;
  p.n_nu = n_nu;
  return p;
}

double collective_factor(const DipoleGeometry& geom) {
  const double a = geom.p_hat_1().dot(geom.p_hat_2());
  const double b = geom.p_hat_1().dot(geom.r_hat()) * geom.p_hat_2().dot(geom.r_hat());
  const double xi = geom.xi();
  const double f = 1.5 * ((a - b) * sinc(xi) + (3.0 * b - a) * near_field_kernel(xi));
  return std::clamp(f, -1.0, 1.0);
}

double collective_decay(const DipoleGeometry& geom, const RadiativeRates& radiative) {
  return collective_factor(geom) * radiative.geometric_mean();
}

double rddi_coupling(const DipoleGeometry& geom, const RadiativeRates& radiative) {
  const double xi = geom.xi();
  const double c2 = std::pow(std::cos(geom.theta()), 2);
  const double s = std::sin(xi);
  const double c = std::cos(xi);
  const double far = -(1.0 - c2) * c / xi;
  const double near = (1.0 - 3.0 * c2) * (s / (xi * xi) + c / (xi * xi * xi));
  return 0.75 * radiative.geometric_mean() * (far + near);
}

double near_zone_coupling(double gamma_radiative, double xi) {
  require(xi > 0, "xi must be > 0");
  return 0.75 * gamma_radiative / (xi * xi * xi);
}

double radiative_rate(double dipole_moment, double nu) {
  require(dipole_moment >= 0 && nu > 0, "dipole moment must be >= 0 and nu > 0");
  return dipole_moment * dipole_moment * nu * nu * nu / (3.0 * std::numbers::pi);
}

double inhomogeneous_rate(const BathSpec& bath) {
  bath.validate();
  const double w = bath.cutoff;
  const double spectral = 2.0 * bath.lambda * w * bath.cutoff / (w * w + bath.cutoff * bath.cutoff);
  return spectral / std::tanh(bath.cutoff / (2.0 * bath.temperature));
}

double inhomogeneous_rate_high_temperature(const BathSpec& bath) {
  bath.validate();
  if (!bath.high_temperature()) {
    std::cerr << "warning: high-temperature dephasing rate used with cutoff >= temperature\n";
  }
  return 2.0 * bath.lambda * bath.temperature / bath.cutoff;
}

double drive_amplitude(const CavityDrive& cav) {
  cav.validate();
  return std::sqrt(cav.power * cav.kappa_c / cav.omega_d);
}

std::complex<double> cavity_amplitude(const CavityDrive& cav) {
  const double e = drive_amplitude(cav);
  return e / std::complex<double>(cav.kappa_c / 2.0, -(cav.omega_d - cav.nu));
}

double cavity_coupling(const CavityDrive& cav) {
  cav.validate();
  return cav.dipole_ac * std::sqrt(cav.nu / (2.0 * cav.mode_volume));
}

double rabi_frequency(const CavityDrive& cav) {
  return cavity_coupling(cav) * std::abs(cavity_amplitude(cav));
}

double dressed_splitting(double omega, double delta1) {
  return std::sqrt(omega * omega + delta1 * delta1 / 4.0);
}

double dressed_resonance_detuning(double omega, double delta2) {
  if (delta2 == 0.0) throw std::domain_error("dressed resonance undefined for delta2 = 0");
  return (delta2 * delta2 - omega * omega) / delta2;
}

double self_consistent_resonance_detuning(double omega, double r_star) {
  if (r_star == 0.0) throw std::domain_error("dressed resonance undefined for R* = 0");
  // delta2 = delta1 - R* turns the resonance condition into R* delta2 = -Omega^2.
  return r_star - omega * omega / r_star;
}

}  // namespace ret
