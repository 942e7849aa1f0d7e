#include "ret/ness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "ret/errors.hpp"

namespace ret {

namespace {

// Solves run in extended precision: the generator mixes scales 1e-9 .. 1e-1.
using MatrixL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using VectorL = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

constexpr long double kSingularRcond = 1e-14L;
constexpr long double kRankTol = 1e-12L;

// Row of the 3 population rows with the largest diagonal magnitude.
template <class Mat>
int trace_row(const Mat& a) {
  int best = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::fabs(a(i, i)) > std::fabs(a(best, best))) best = i;
  }
  return best;
}

// Scales every row except `skip` to unit max-norm.
void equilibrate_rows(MatrixL& a, int skip) {
  for (int i = 0; i < a.rows(); ++i) {
    if (i == skip) continue;
    const long double s = a.row(i).cwiseAbs().maxCoeff();
    if (s > 0) a.row(i) /= s;
  }
}

NessSolution finish(const LiouvilleMatrix& m, const Vector9& v, NessMethod method) {
  NessSolution sol;
  sol.state = StateVector9(v);
  sol.method = method;
  sol.residual = (m.matrix * v).cwiseAbs().maxCoeff();
  sol.spectral_gap = spectral_gap(spectrum(m));
  return sol;
}

}  // namespace

std::string_view to_string(NessMethod m) {
  switch (m) {
    case NessMethod::Block:
      return "block";
    case NessMethod::Nullspace:
      return "nullspace";
    case NessMethod::ClosedForm:
      return "closed-form";
  }
  return "unknown";
}

NessSolution solve_ness_block(const LiouvilleMatrix& m) {
  const MatrixL full = m.matrix.cast<long double>();
  const MatrixL m_pp = full.topLeftCorner(3, 3);
  const MatrixL m_pc = full.topRightCorner(3, 6);
  const MatrixL m_cp = full.bottomLeftCorner(6, 3);
  const MatrixL m_cc = full.bottomRightCorner(6, 6);

  Eigen::PartialPivLU<MatrixL> cc_lu(m_cc);
  if (!(cc_lu.rcond() > kSingularRcond)) {
    throw DegenerateGenerator("coherence block of the generator is singular");
  }
  const MatrixL elim = cc_lu.solve(m_cp);  // M_cc^-1 M_cp
  MatrixL a = m_pp - m_pc * elim;

  const int r = trace_row(a);
  a.row(r).setOnes();
  VectorL rhs = VectorL::Zero(3);
  rhs(r) = 1;
  equilibrate_rows(a, r);

  Eigen::FullPivLU<MatrixL> pop_lu(a);
  if (!(pop_lu.rcond() > kSingularRcond) || !pop_lu.isInvertible()) {
    throw NonUniqueSteadyState("population equations do not fix a unique steady state");
  }
  const VectorL pops = pop_lu.solve(rhs);
  const VectorL coh = -elim * pops;

  Vector9 v;
  for (int i = 0; i < 3; ++i) v(i) = static_cast<double>(pops(i));
  for (int i = 0; i < 6; ++i) v(3 + i) = static_cast<double>(coh(i));
  return finish(m, v, NessMethod::Block);
}

NessSolution solve_ness_nullspace(const LiouvilleMatrix& m) {
  const MatrixL full = m.matrix.cast<long double>();

  Eigen::JacobiSVD<MatrixL> svd(full);
  const VectorL& sv = svd.singularValues();
  const long double scale = sv(0);
  int null_dim = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) <= kRankTol * scale) ++null_dim;
  }
  if (scale == 0 || null_dim > 1) {
    throw NonUniqueSteadyState("generator null space has dimension > 1");
  }

  MatrixL a = full;
  const int r = trace_row(a);
  a.row(r).setZero();
  a.row(r).head(3).setOnes();
  VectorL rhs = VectorL::Zero(9);
  rhs(r) = 1;
  equilibrate_rows(a, r);

  Eigen::ColPivHouseholderQR<MatrixL> qr(a);
  if (qr.rank() < 9) {
    throw NonUniqueSteadyState("trace-constrained system is rank deficient");
  }
  VectorL x = qr.solve(rhs);

  // Second pass with columns scaled by the first solution, so components many
  // orders below the largest one still carry full relative precision.
  const long double tiny =
      std::numeric_limits<long double>::min() / std::numeric_limits<long double>::epsilon();
  const VectorL col_scale = x.cwiseAbs().cwiseMax(tiny);
  Eigen::ColPivHouseholderQR<MatrixL> qr_scaled(a * col_scale.asDiagonal());
  if (qr_scaled.rank() == 9) x = col_scale.cwiseProduct(qr_scaled.solve(rhs));
  x /= x.head(3).sum();

  Vector9 v;
  for (int i = 0; i < 9; ++i) v(i) = static_cast<double>(x(i));
  return finish(m, v, NessMethod::Nullspace);
}

double spectral_gap(const std::vector<std::complex<double>>& eigenvalues) {
  if (eigenvalues.size() < 2) return 0.0;
  const auto zero = std::min_element(eigenvalues.begin(), eigenvalues.end(),
                                     [](auto a, auto b) { return std::abs(a) < std::abs(b); });
  double max_re = -std::numeric_limits<double>::infinity();
  for (auto it = eigenvalues.begin(); it != eigenvalues.end(); ++it) {
    if (it != zero) max_re = std::max(max_re, it->real());
  }
  return -max_re;
}

NessValidity validate_ness(const LiouvilleMatrix& m, double tol) {
  NessValidity report;
  report.eigenvalues = spectrum(m);
  report.max_real_nonzero = -std::numeric_limits<double>::infinity();
  for (const auto& ev : report.eigenvalues) {
    if (std::abs(ev) < tol) {
      ++report.zero_modes;
    } else {
      report.max_real_nonzero = std::max(report.max_real_nonzero, ev.real());
    }
  }
  report.spectral_gap = -report.max_real_nonzero;
  return report;
}

Physicality physicality(const StateVector9& v) {
  return {std::abs(v.trace() - 1.0), min_eigenvalue(v)};
}

}  // namespace ret
