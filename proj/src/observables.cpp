#include "ret/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ret/errors.hpp"

namespace ret {

namespace {

constexpr double kStrongGammaMax = 0.05;
constexpr double kStrongBiasMax = 0.05;
constexpr double kWeakCouplingMax = 1e-3;
constexpr double kForsterRabiFraction = 0.2;

double require_r_star(const SystemParams& p) {
  const double r = p.r_star();
  if (r == 0.0) throw ExpansionInvalid("rate expansions need R* != 0");
  return r;
}

double weak_rate_from_coupling(const SystemParams& p, double coupling) {
  const double r = require_r_star(p);
  const double r2 = r * r;
  const double w2 = p.rabi * p.rabi;
  const double detuning = (r2 - w2) * (r2 - w2) / r2;
  if (detuning <= p.gamma * p.gamma) {
    throw ExpansionInvalid("weak-coupling expansion diverges near Omega = R*");
  }
  const double coupling2 = coupling * coupling / (detuning + p.gamma * p.gamma);
  return p.gamma * (2 * w2 + r2) / (2 * r2) * coupling2;
}

}  // namespace

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::StrongCoupling:
      return "strong-coupling";
    case Regime::WeakCoupling:
      return "weak-coupling";
    case Regime::Forster:
      return "forster";
    case Regime::Crossover:
      return "crossover";
  }
  return "crossover";
}

double transfer_rate(const NessSolution& ness, const SystemParams& p) {
  return p.gamma * ness.state.rho_bb();
}

double quantum_yield(const NessSolution& ness, const SystemParams& p) {
  const double rho_aa = ness.state.rho_aa();
  const double rho_bb = ness.state.rho_bb();
  const double kappa = transfer_rate(ness, p);
  const double denom = kappa + p.gamma * rho_aa;
  if (rho_aa + rho_bb <= 0.0 || denom == 0.0) {
    throw UndefinedYield("quantum yield undefined without excited-state population");
  }
  return kappa / denom;
}

std::complex<double> coherence_da(const NessSolution& ness) { return ness.state.rho_12(); }

double strong_coupling_parameter(const SystemParams& p) {
  if (p.coupling == 0.0) throw ExpansionInvalid("strong-coupling expansion needs Delta != 0");
  return p.gamma * p.gamma / (p.coupling * p.coupling);
}

double rabi_bias(const SystemParams& p) {
  if (p.coupling == 0.0) throw ExpansionInvalid("strong-coupling expansion needs Delta != 0");
  return (p.rabi - p.r_star()) / p.coupling;
}

double strong_coupling_rate(const SystemParams& p) {
  const double r = require_r_star(p);
  const double g = strong_coupling_parameter(p);
  const double bias = rabi_bias(p);
  return p.gamma * (1.0 / 5 - 3.0 / 50 * g - 4.0 / 75 * (p.coupling / r) * g * bias);
}

double strong_coupling_rate_xi(const SystemParams& p, double xi) {
  const double r = require_r_star(p);
  if (p.gamma_h == 0.0) throw ExpansionInvalid("distance form needs Gamma_h > 0");
  const double xi6 = std::pow(xi, 6);
  const double g3 = p.gamma * p.gamma * p.gamma;
  return p.gamma / 5 -
         (8.0 / 75 - 64.0 / 675 * (p.rabi - r) / r) * g3 / (p.gamma_h * p.gamma_h) * xi6;
}

bool strong_coupling_valid(const SystemParams& p) {
  if (p.coupling == 0.0) return false;
  return strong_coupling_parameter(p) < kStrongGammaMax && std::abs(rabi_bias(p)) < kStrongBiasMax;
}

double weak_coupling_parameter(const SystemParams& p) {
  const double r = require_r_star(p);
  const double r2 = r * r;
  const double w2 = p.rabi * p.rabi;
  return p.coupling * p.coupling / ((r2 - w2) * (r2 - w2) / r2 + p.gamma * p.gamma);
}

double weak_coupling_rate(const SystemParams& p) { return weak_rate_from_coupling(p, p.coupling); }

double weak_coupling_rate_xi(const SystemParams& p, double xi) {
  return weak_rate_from_coupling(p, near_zone_coupling(p.gamma_h, xi));
}

double forster_rate(const SystemParams& p, double xi) {
  const double r = require_r_star(p);
  if (!(xi > 0)) throw InvalidParameter("xi must be > 0");
  return 9 * p.gamma * p.gamma_h * p.gamma_h / (32 * r * r * std::pow(xi, 6));
}

double effective_range(const SystemParams& p) {
  if (!(p.gamma > 0)) throw InvalidParameter("effective range needs Gamma > 0");
  const double decay_bound = std::cbrt(3 * p.gamma_h / (4 * p.gamma));
  const double bias = std::abs(p.rabi - p.r_star());
  if (bias == 0.0) return decay_bound;
  return std::min(std::cbrt(3 * p.gamma_h / (4 * bias)), decay_bound);
}

Regime classify_regime(const SystemParams& p) {
  if (strong_coupling_valid(p)) return Regime::StrongCoupling;
  if (p.r_star() == 0.0) return Regime::Crossover;
  if (weak_coupling_parameter(p) < kWeakCouplingMax) {
    return std::abs(p.rabi) < kForsterRabiFraction * std::abs(p.r_star()) ? Regime::Forster
                                                                          : Regime::WeakCoupling;
  }
  return Regime::Crossover;
}

RateReport rate_report(const NessSolution& ness, const SystemParams& p) {
  RateReport r;
  r.kappa = transfer_rate(ness, p);
  r.rho_aa = ness.state.rho_aa();
  r.rho_bb = ness.state.rho_bb();
  r.coherence_12 = coherence_da(ness);
  r.regime = classify_regime(p);
  try {
    r.eta = quantum_yield(ness, p);
  } catch (const UndefinedYield&) {
    r.eta = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

}  // namespace ret
