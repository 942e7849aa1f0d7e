#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "ret/errors.hpp"
#include "ret/liouvillian.hpp"

using namespace ret;
using doctest::Approx;

namespace {

SystemParams fig3_params() { return SystemParams::resonant(0.0, 0.1, 0.1, 4e-4, 1e-4, 1e-9); }

}  // namespace

TEST_CASE("printed generator equals the superoperator oracle") {
  oracle::ParamSampler sampler(11);
  for (int k = 0; k < 300; ++k) {
    const SystemParams p = sampler.draw();
    const double diff = (build_matrix(p).matrix - oracle::generator(p)).cwiseAbs().maxCoeff();
    CHECK(diff <= 1e-14);
  }
}

TEST_CASE("Lindblad construction equals the oracle with thermal photons") {
  oracle::ParamSampler sampler(12);
  for (int k = 0; k < 300; ++k) {
    SystemParams p = sampler.draw();
    p.n_nu = sampler.uniform(0.0, 3.0);
    const double diff = (build_from_lindblad(p).matrix - oracle::generator(p)).cwiseAbs().maxCoeff();
    CHECK(diff <= 1e-14);
  }
}

TEST_CASE("printed and Lindblad generators differ in one thermal entry only") {
  SystemParams p = fig3_params();
  p.gamma_h = 3e-5;
  p.n_nu = 0.5;
  const auto diff = compare_generators(build_matrix(p), build_from_lindblad(p), 1e-15);
  REQUIRE(diff.size() == 1);
  CHECK(diff[0].row == 7);
  CHECK(diff[0].col == 0);
  CHECK(diff[0].first == Approx(p.n_nu * p.gamma));
  CHECK(diff[0].second == Approx(p.n_nu * p.gamma_h));

  p.n_nu = 0.0;
  CHECK(compare_generators(build_matrix(p), build_from_lindblad(p), 1e-15).empty());
}

TEST_CASE("solver generator switches construction with the thermal occupation") {
  SystemParams p = fig3_params();
  CHECK(build_generator(p).provenance == Provenance::PrintedForm);
  p.n_nu = 0.1;
  CHECK(build_generator(p).provenance == Provenance::GenericLindblad);
  CHECK(to_string(Provenance::PrintedForm) == "printed-form");
  CHECK(to_string(Provenance::GenericLindblad) == "generic-lindblad");
}

TEST_CASE("generators conserve the trace") {
  oracle::ParamSampler sampler(13);
  for (int k = 0; k < 200; ++k) {
    SystemParams p = sampler.draw();
    if (k % 2) p.n_nu = sampler.uniform(0.0, 2.0);
    const auto m = build_generator(p);
    CHECK(m.trace_defect() <= 1e-16 * (1.0 + m.norm_inf()));
  }
}

TEST_CASE("separate dephasing damps only the coherences") {
  const SystemParams p = fig3_params();
  LindbladRates rates = LindbladRates::symmetric(p);
  rates.separate_dephasing = true;
  rates.dephasing1 = 2e-5;
  rates.dephasing2 = 0.0;
  const Matrix9 extra = build_from_lindblad(p, rates).matrix - build_from_lindblad(p).matrix;
  CHECK(extra.topRows<3>().cwiseAbs().maxCoeff() == 0.0);
  // rho_01 and rho_12 decay at Gamma_inh / 2; rho_02 is untouched.
  CHECK(extra(3, 3) == Approx(-1e-5));
  CHECK(extra(4, 4) == Approx(-1e-5));
  CHECK(extra(5, 5) == 0.0);
  CHECK(extra(7, 7) == Approx(-1e-5));
}

TEST_CASE("state vector and density matrix round trip") {
  DensityMatrix3 rho;
  using cd = std::complex<double>;
  rho.value << 0.5, cd(0.1, 0.2), cd(0.05, -0.01),
               cd(0.1, -0.2), 0.3, cd(0.02, 0.03),
               cd(0.05, 0.01), cd(0.02, -0.03), 0.2;
  CHECK(rho.is_physical());
  const StateVector9 v = to_state_vector(rho);
  CHECK(v.rho_gg() == 0.5);
  CHECK(v.rho_01() == std::complex<double>(0.1, 0.2));
  CHECK(v.rho_12() == std::complex<double>(0.02, 0.03));
  CHECK((to_density_matrix(v).value - rho.value).cwiseAbs().maxCoeff() == 0.0);
  CHECK(v.trace() == Approx(1.0));

  rho.value(1, 0) = {0.3, 0.0};
  CHECK_THROWS_AS(to_state_vector(rho), InvalidState);
}

TEST_CASE("ground state is physical") {
  const auto g = StateVector9::ground();
  CHECK(g.trace() == 1.0);
  CHECK(min_eigenvalue(g) == Approx(0.0).epsilon(1e-15));
  CHECK(kComponentNames.size() == 9);
  CHECK(kComponentNames[index(Component::AcceptorPopulation)] == "rho_bb");
}

TEST_CASE("generator drives pure-state coherences consistently with the oracle") {
  // d/dt of the ground state under the drive alone: only Im rho_01 moves.
  SystemParams p;
  p.delta1 = 0.0;
  p.delta2 = -0.1;
  p.rabi = 0.05;
  p.gamma = 1e-4;
  p.gamma_h = 0.0;
  const Vector9 rate = build_matrix(p).matrix * StateVector9::ground().vector();
  for (int i = 0; i < 9; ++i) {
    CAPTURE(i);
    if (i == index(Component::ImGroundDonor)) {
      CHECK(std::abs(rate(i)) == Approx(p.rabi));
    } else {
      CHECK(rate(i) == 0.0);
    }
  }
}

TEST_CASE("spectrum ordering and closed-system limit") {
  const auto eigs = spectrum(build_matrix(fig3_params()));
  REQUIRE(eigs.size() == 9);
  for (std::size_t i = 1; i < eigs.size(); ++i) CHECK(eigs[i - 1].real() >= eigs[i].real());
  CHECK(std::abs(eigs.front()) < 1e-12);

  SystemParams closed = fig3_params();
  closed.gamma = 0.0;
  closed.gamma_h = 0.0;
  for (const auto& ev : spectrum(build_matrix(closed))) CHECK(std::abs(ev.real()) < 1e-12);
}

TEST_CASE("builders reject inadmissible parameters") {
  SystemParams p = fig3_params();
  p.gamma = -1e-4;
  CHECK_THROWS_AS(build_matrix(p), InvalidParameter);
  p = fig3_params();
  p.rabi = std::nan("");
  CHECK_THROWS_AS(build_from_lindblad(p), InvalidParameter);
}
