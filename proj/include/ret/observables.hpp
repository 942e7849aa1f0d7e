#pragma once

// Transfer rate, quantum yield and donor-acceptor coherence of a steady state,
// plus the analytic rate expansions used to cross-check the numerics.

#include <complex>
#include <string_view>

#include "ret/ness.hpp"
#include "ret/params.hpp"

namespace ret {

enum class Regime { StrongCoupling, WeakCoupling, Forster, Crossover };

std::string_view to_string(Regime r);

struct RateReport {
  double kappa = 0;
  double eta = 0;
  double rho_aa = 0;
  double rho_bb = 0;
  std::complex<double> coherence_12;
  Regime regime = Regime::Crossover;
};

/// kappa = Gamma_22 rho_bb.
double transfer_rate(const NessSolution& ness, const SystemParams& p);

/// eta = kappa / (kappa + Gamma_11 rho_aa). Throws UndefinedYield when both
/// excited populations vanish.
double quantum_yield(const NessSolution& ness, const SystemParams& p);

/// rho_12 from the nine-tuple.
std::complex<double> coherence_da(const NessSolution& ness);

/// Small parameter gamma = Gamma^2 / Delta^2.
double strong_coupling_parameter(const SystemParams& p);

/// Omega~ = (Omega - R*) / Delta.
double rabi_bias(const SystemParams& p);

/// Gamma (1/5 - 3/50 gamma - 4/75 (Delta/R*) gamma Omega~). Requires Delta != 0.
double strong_coupling_rate(const SystemParams& p);

/// Distance form Gamma/5 - (8/75 - 64/675 (Omega - R*)/R*) Gamma^3/Gamma_h^2 xi^6.
double strong_coupling_rate_xi(const SystemParams& p, double xi);

/// gamma < 0.05 and |Omega~| < 0.05.
bool strong_coupling_valid(const SystemParams& p);

/// Dimensionless coupling Delta~^2 = Delta^2 / ((R*^2 - Omega^2)^2 / R*^2 + Gamma^2).
double weak_coupling_parameter(const SystemParams& p);

/// Gamma (2 Omega^2 + R*^2) / (2 R*^2) Delta~^2. Throws ExpansionInvalid near
/// Omega = R*, where the regulator Gamma^2 dominates the denominator.
double weak_coupling_rate(const SystemParams& p);

/// Same expansion with the near-zone coupling Delta = 3 Gamma_h / (4 xi^3).
double weak_coupling_rate_xi(const SystemParams& p, double xi);

/// 9 Gamma Gamma_h^2 / (32 R*^2 xi^6).
double forster_rate(const SystemParams& p, double xi);

/// min(cbrt(3 Gamma_h / 4|Omega - R*|), cbrt(3 Gamma_h / 4 Gamma)).
double effective_range(const SystemParams& p);

Regime classify_regime(const SystemParams& p);

RateReport rate_report(const NessSolution& ness, const SystemParams& p);

}  // namespace ret
