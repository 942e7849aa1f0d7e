#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ret/errors.hpp"
#include "ret/ness.hpp"
#include "ret/observables.hpp"

using namespace ret;
using doctest::Approx;

namespace {

NessSolution solve(const SystemParams& p) { return solve_ness_block(build_matrix(p)); }

}  // namespace

TEST_CASE("rate and yield definitions") {
  NessSolution s;
  Vector9 v = Vector9::Zero();
  v << 0.7, 0.2, 0.1, 0, 0, 0, 0, 0.03, -0.04;
  s.state = StateVector9(v);
  SystemParams p;
  p.gamma = 1e-4;
  CHECK(transfer_rate(s, p) == Approx(1e-5));
  CHECK(quantum_yield(s, p) == Approx(1.0 / 3));
  CHECK(std::abs(coherence_da(s)) == Approx(0.05));

  s.state = StateVector9::ground();
  CHECK_THROWS_AS(quantum_yield(s, p), UndefinedYield);
  CHECK(std::isnan(rate_report(s, p).eta));
}

TEST_CASE("strong-coupling expansion") {
  const SystemParams p = SystemParams::resonant(0.0, 0.1, 0.1, 5e-3, 1e-4, 1e-9);
  CHECK(strong_coupling_parameter(p) == Approx(4e-4));
  CHECK(rabi_bias(p) == 0.0);
  CHECK(strong_coupling_rate(p) == Approx(1e-4 * (0.2 - 0.06 * 4e-4)));
  CHECK(strong_coupling_valid(p));
  // Deep in the strong regime the numerics approach Gamma / 5.
  CHECK(transfer_rate(solve(p), p) == Approx(strong_coupling_rate(p)).epsilon(1e-3));

  SystemParams q = p;
  q.coupling = 0.0;
  CHECK_THROWS_AS(strong_coupling_rate(q), ExpansionInvalid);
  CHECK_FALSE(strong_coupling_valid(q));
}

TEST_CASE("distance form agrees with the coupling form in the near zone") {
  // With Delta = 3 Gamma_h / (4 xi^3) the two printed forms are the same
  // expansion; they agree to the order kept.
  const double gh = 1e-9;
  for (double xi : {2e-3, 3e-3, 5e-3}) {
    for (double bias : {0.0, 1e-6, -1e-6}) {
      SystemParams p = SystemParams::resonant(0.0, 0.1, 0.1 + bias, near_zone_coupling(gh, xi), 1e-4, gh);
      CAPTURE(xi);
      CAPTURE(bias);
      const double a = strong_coupling_rate(p);
      const double b = strong_coupling_rate_xi(p, xi);
      CHECK(std::abs(a - b) <= 1e-4 * std::pow(strong_coupling_parameter(p), 2) * 10);
    }
  }
}

TEST_CASE("weak-coupling expansion") {
  SystemParams p = SystemParams::resonant(0.0, 0.1, 0.01, 1e-6, 1e-4, 1e-9);
  const double r2 = 0.01;
  const double w2 = 1e-4;
  const double d2 = 1e-12 / ((r2 - w2) * (r2 - w2) / r2 + 1e-8);
  CHECK(weak_coupling_parameter(p) == Approx(d2).epsilon(1e-14));
  CHECK(weak_coupling_rate(p) == Approx(1e-4 * (2 * w2 + r2) / (2 * r2) * d2).epsilon(1e-14));
  CHECK(transfer_rate(solve(p), p) == Approx(weak_coupling_rate(p)).epsilon(1e-3));

  p.rabi = 0.1;
  CHECK_THROWS_AS(weak_coupling_rate(p), ExpansionInvalid);
}

TEST_CASE("weak expansion tracks the steady state beyond the effective range") {
  // Past 3 cbrt(3 Gamma_h / 4 Gamma) the coupling is weak; the collective decay
  // channel, absent from the expansion, only matters once xi approaches 0.5.
  const double gamma_h = 1e-9;
  const double gamma = 1e-4;
  const double xi_min = 3 * std::cbrt(3 * gamma_h / (4 * gamma));
  for (double ratio : {0.1, 0.5, 2.0}) {
    for (double xi = xi_min; xi <= 0.3; xi *= 1.2) {
      const double delta =
          rddi_coupling(DipoleGeometry::parallel(xi, std::numbers::pi / 2),
                        RadiativeRates::symmetric(gamma_h));
      const SystemParams p = SystemParams::resonant(0.0, 0.1, ratio * 0.1, delta, gamma, gamma_h);
      const double kappa = transfer_rate(solve_ness_block(build_matrix(p)), p);
      CHECK(kappa == Approx(weak_coupling_rate(p)).epsilon(0.02));
    }
  }
}

TEST_CASE("Forster limit") {
  const SystemParams p = SystemParams::resonant(0.0, 0.1, 0.01, 0.0, 1e-4, 1e-9);
  CHECK(forster_rate(p, 0.01) == Approx(2.8125e-9).epsilon(1e-14));
  CHECK(forster_rate(p, 0.02) == Approx(2.8125e-9 / 64).epsilon(1e-14));
  CHECK_THROWS_AS(forster_rate(p, 0.0), InvalidParameter);
  // Undriven limit of the weak expansion at near-zone coupling.
  SystemParams q = p;
  q.rabi = 0.0;
  CHECK(weak_coupling_rate_xi(q, 0.05) == Approx(forster_rate(q, 0.05)).epsilon(1e-7));
}

TEST_CASE("effective range") {
  SystemParams p = SystemParams::resonant(0.0, 0.1, 0.1, 0.0, 1e-4, 1e-9);
  CHECK(effective_range(p) == Approx(std::cbrt(3e-9 / 4e-4)));
  p.rabi = 0.1 + 1e-3;
  CHECK(effective_range(p) == Approx(std::cbrt(3e-9 / 4e-3)).epsilon(1e-12));
}

TEST_CASE("regime classification") {
  const SystemParams strong = SystemParams::resonant(0.0, 0.1, 0.1, 5e-3, 1e-4, 1e-9);
  CHECK(classify_regime(strong) == Regime::StrongCoupling);
  const SystemParams forster = SystemParams::resonant(0.0, 0.1, 0.01, 1e-5, 1e-4, 1e-9);
  CHECK(classify_regime(forster) == Regime::Forster);
  const SystemParams weak = SystemParams::resonant(0.0, 0.1, 0.2, 1e-5, 1e-4, 1e-9);
  CHECK(classify_regime(weak) == Regime::WeakCoupling);
  const SystemParams cross = SystemParams::resonant(0.0, 0.1, 0.1, 1e-4, 1e-4, 1e-9);
  CHECK(classify_regime(cross) == Regime::Crossover);
  CHECK(to_string(Regime::Forster) == "forster");
}
