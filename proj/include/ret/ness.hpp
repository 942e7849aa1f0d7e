#pragma once

// Nonequilibrium steady state of the generator by three independent routes:
// Schur-complement elimination of the coherences, a direct constrained solve of
// the full 9x9 system, and the closed rational form (n_nu = 0, symmetric Gamma).

#include <complex>
#include <string_view>
#include <vector>

#include "ret/liouvillian.hpp"
#include "ret/params.hpp"

namespace ret {

enum class NessMethod { Block, Nullspace, ClosedForm };

std::string_view to_string(NessMethod m);

struct NessSolution {
  StateVector9 state;
  NessMethod method = NessMethod::Block;
  double residual = 0.0;      ///< ||M v||_inf
  double spectral_gap = 0.0;  ///< -max Re of the non-zero eigenvalues
};

/// Eliminates the coherence block: A = M_pp - M_pc M_cc^-1 M_cp.
/// Throws DegenerateGenerator if M_cc is singular and NonUniqueSteadyState if
/// the trace-constrained population system is singular.
NessSolution solve_ness_block(const LiouvilleMatrix& m);

/// Solves M v = 0 with one population row replaced by the trace constraint.
/// Throws NonUniqueSteadyState when the null space of M is not one-dimensional.
NessSolution solve_ness_nullspace(const LiouvilleMatrix& m);

/// Closed rational form N_i / D. Requires n_nu == 0 (InvalidParameter
/// otherwise). Throws IllConditionedClosedForm when |D| underflows.
NessSolution ness_closed_form(const SystemParams& p);

/// Common denominator D and numerators N_1..N_9 of the closed form.
struct ClosedFormTerms {
  long double denominator = 0;
  std::array<long double, 9> numerators{};
};

ClosedFormTerms closed_form_terms(const SystemParams& p);

struct NessValidity {
  int zero_modes = 0;          ///< eigenvalues with |lambda| < tol
  double max_real_nonzero = 0; ///< max Re over the remaining eigenvalues
  double spectral_gap = 0;     ///< -max_real_nonzero
  std::vector<std::complex<double>> eigenvalues;

  /// A unique, attracting steady state.
  bool passed() const { return zero_modes == 1 && max_real_nonzero < 0; }
};

NessValidity validate_ness(const LiouvilleMatrix& m, double tol = 1e-12);

/// -max Re over all eigenvalues except the one of smallest modulus.
double spectral_gap(const std::vector<std::complex<double>>& eigenvalues);

/// Largest deviation from a physical state: |trace - 1| and -min eigenvalue.
struct Physicality {
  double trace_error = 0;
  double min_eigenvalue = 0;
};

Physicality physicality(const StateVector9& v);

}  // namespace ret
