#include "ret/liouvillian.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "ret/errors.hpp"

namespace ret {

namespace {

constexpr double kHermitianTol = 1e-12;

using cd = std::complex<double>;

// Upper-triangle pairs in nine-tuple order.
constexpr std::array<std::pair<int, int>, 3> kPairs = {{{0, 1}, {0, 2}, {1, 2}}};

Vector9 extract(const Matrix3c& rho) {
  Vector9 v;
  for (int i = 0; i < 3; ++i) v(i) = rho(i, i).real();
  for (int k = 0; k < 3; ++k) {
    const auto [a, b] = kPairs[k];
    v(3 + 2 * k) = rho(a, b).real();
    v(4 + 2 * k) = rho(a, b).imag();
  }
  return v;
}

Matrix3c projector(int i, int j) {
  Matrix3c m = Matrix3c::Zero();
  m(i, j) = 1.0;
  return m;
}

// Hermitian matrix whose nine-tuple is the k-th unit vector.
Matrix3c basis_element(int k) {
  Matrix3c m = Matrix3c::Zero();
  if (k < 3) {
    m(k, k) = 1.0;
    return m;
  }
  const auto [a, b] = kPairs[(k - 3) / 2];
  const cd z = ((k - 3) % 2 == 0) ? cd(1.0, 0.0) : cd(0.0, 1.0);
  m(a, b) = z;
  m(b, a) = std::conj(z);
  return m;
}

Matrix3c hamiltonian(const SystemParams& p) {
  Matrix3c h = Matrix3c::Zero();
  h(1, 1) = p.delta1;
  h(2, 2) = p.delta2;
  h(1, 2) = h(2, 1) = p.coupling;
  h(1, 0) = h(0, 1) = p.rabi;
  return h;
}

}  // namespace

double DensityMatrix3::hermiticity_error() const {
  return (value - value.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix3::min_eigenvalue() const {
  const Matrix3c herm = 0.5 * (value + value.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix3c> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool DensityMatrix3::is_physical() const {
  return hermiticity_error() <= kHermitianTol && std::abs(trace() - cd(1.0)) <= 1e-10 &&
         min_eigenvalue() >= -1e-10;
}

StateVector9 to_state_vector(const DensityMatrix3& rho) {
  if (!rho.value.allFinite() || rho.hermiticity_error() > kHermitianTol) {
    throw InvalidState("density matrix is not Hermitian");
  }
  return StateVector9(extract(rho.value));
}

DensityMatrix3 to_density_matrix(const StateVector9& v) {
  DensityMatrix3 rho;
  for (int i = 0; i < 3; ++i) rho.value(i, i) = v[i];
  for (int k = 0; k < 3; ++k) {
    const auto [a, b] = kPairs[k];
    const cd z(v[3 + 2 * k], v[4 + 2 * k]);
    rho.value(a, b) = z;
    rho.value(b, a) = std::conj(z);
  }
  return rho;
}

double min_eigenvalue(const StateVector9& v) { return to_density_matrix(v).min_eigenvalue(); }

std::string_view to_string(Provenance p) {
  return p == Provenance::PrintedForm ? "printed-form" : "generic-lindblad";
}

double LiouvilleMatrix::trace_defect() const {
  return matrix.topRows<3>().colwise().sum().cwiseAbs().maxCoeff();
}

double LiouvilleMatrix::norm_inf() const { return matrix.cwiseAbs().rowwise().sum().maxCoeff(); }

LiouvilleMatrix build_matrix(const SystemParams& p) {
  p.validate_admissible();
  const double n = p.n_nu;
  const double g = p.gamma;
  const double gh = p.gamma_h;
  const double w = p.rabi;
  const double dd = p.coupling;
  const double d1 = p.delta1;
  const double d2 = p.delta2;
  const double pop = (n + 1) * g;           // (n+1) Gamma
  const double coh = (3 * n + 1) / 2 * g;   // (3n+1) Gamma / 2
  const double cross = (n + 1) * gh;        // (n+1) Gamma_h
  const double half_cross = (n + 1) / 2 * gh;

  LiouvilleMatrix m;
  m.provenance = Provenance::PrintedForm;
  m.params = p;
  // clang-format off
  m.matrix <<
      -2 * n * g,  pop,          pop,         0,           -2 * w,      0,           0,           2 * cross,  0,
      n * g,       -pop,         0,           0,           2 * w,       0,           0,           -cross,     -2 * dd,
      n * g,       0,            -pop,        0,           0,           0,           0,           -cross,     2 * dd,
      0,           0,            0,           -coh,        -d1,         -half_cross, -dd,         0,          0,
      w,           -w,           0,           d1,          -coh,        dd,          -half_cross, 0,          0,
      0,           0,            0,           -half_cross, -dd,         -coh,        -d2,         0,          w,
      0,           0,            0,           dd,          -half_cross, d2,          -coh,        -w,         0,
      n * g,       -half_cross,  -half_cross, 0,           0,           0,           w,           -pop,       d1 - d2,
      0,           dd,           -dd,         0,           0,           -w,          0,           d2 - d1,    -pop;
  // clang-format on
  return m;
}

Matrix3c master_equation_rhs(const SystemParams& p, const LindbladRates& rates,
                             const Matrix3c& rho) {
  const Matrix3c h = hamiltonian(p);
  const cd i(0.0, 1.0);
  Matrix3c out = i * (rho * h - h * rho);

  const double n = p.n_nu;
  const double rate[3][3] = {{0, 0, 0}, {0, rates.gamma11, p.gamma_h}, {0, p.gamma_h, rates.gamma22}};
  Matrix3c acc = Matrix3c::Zero();
  for (int j = 1; j <= 2; ++j) {
    for (int jp = 1; jp <= 2; ++jp) {
      const double r = rate[j][jp] / 2;
      acc += (1 + n) * r * (projector(0, j) * rho * projector(jp, 0) - rho * projector(j, jp));
      Matrix3c thermal = projector(j, 0) * rho * projector(0, jp);
      if (j == jp) thermal -= rho * projector(0, 0);
      acc += n * r * thermal;
    }
  }
  if (rates.separate_dephasing) {
    const double deph[3] = {0, rates.dephasing1, rates.dephasing2};
    for (int j = 1; j <= 2; ++j) {
      const Matrix3c pj = projector(j, j);
      acc += deph[j] / 2 * (pj * rho * pj - rho * pj);
    }
  }
  out += acc + acc.adjoint();
  return out;
}

LiouvilleMatrix build_from_lindblad(const SystemParams& p, const LindbladRates& rates) {
  p.validate_admissible();
  // Only the rate inequalities of the Lindblad form are checked here; the
  // RadiativeRates constructor carries the full set.
  RadiativeRates(rates.gamma11, rates.gamma22, p.gamma_h, rates.dephasing1, rates.dephasing2);

  LiouvilleMatrix m;
  m.provenance = Provenance::GenericLindblad;
  m.params = p;
  for (int k = 0; k < 9; ++k) {
    m.matrix.col(k) = extract(master_equation_rhs(p, rates, basis_element(k)));
  }
  return m;
}

LiouvilleMatrix build_from_lindblad(const SystemParams& p) {
  return build_from_lindblad(p, LindbladRates::symmetric(p));
}

LiouvilleMatrix build_generator(const SystemParams& p) {
  return p.n_nu == 0.0 ? build_matrix(p) : build_from_lindblad(p);
}

std::vector<EntryMismatch> compare_generators(const LiouvilleMatrix& a, const LiouvilleMatrix& b,
                                              double tol) {
  std::vector<EntryMismatch> out;
  for (int r = 0; r < 9; ++r) {
    for (int c = 0; c < 9; ++c) {
      if (std::abs(a.matrix(r, c) - b.matrix(r, c)) > tol) {
        out.push_back({r, c, a.matrix(r, c), b.matrix(r, c)});
      }
    }
  }
  return out;
}

std::vector<std::complex<double>> spectrum(const LiouvilleMatrix& m) {
  if (!m.matrix.allFinite()) throw NumericalError("generator has non-finite entries");
  Eigen::EigenSolver<Matrix9> es(m.matrix, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw NumericalError("eigensolver did not converge");
  std::vector<cd> ev(es.eigenvalues().begin(), es.eigenvalues().end());
  std::sort(ev.begin(), ev.end(), [](const cd& x, const cd& y) {
    if (x.real() != y.real()) return x.real() > y.real();
    return x.imag() > y.imag();
  });
  return ev;
}

}  // namespace ret
