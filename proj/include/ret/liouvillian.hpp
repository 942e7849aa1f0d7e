#pragma once

// Real nine-tuple representation of the 3x3 density matrix and the 9x9
// generator M of d|rho>/dt = M |rho>.
//
// Basis: |0> ground, |1> donor excited, |2> acceptor excited.
// Nine-tuple order: (rho_00, rho_11, rho_22, Re rho_01, Im rho_01,
//                    Re rho_02, Im rho_02, Re rho_12, Im rho_12).

#include <array>
#include <complex>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "ret/params.hpp"

namespace ret {

using Matrix9 = Eigen::Matrix<double, 9, 9>;
using Vector9 = Eigen::Matrix<double, 9, 1>;
using Matrix3c = Eigen::Matrix3cd;

enum class Component : int {
  GroundPopulation = 0,
  DonorPopulation = 1,
  AcceptorPopulation = 2,
  ReGroundDonor = 3,
  ImGroundDonor = 4,
  ReGroundAcceptor = 5,
  ImGroundAcceptor = 6,
  ReDonorAcceptor = 7,
  ImDonorAcceptor = 8,
};

constexpr int index(Component c) { return static_cast<int>(c); }

/// Column names of the nine-tuple, in order.
inline constexpr std::array<std::string_view, 9> kComponentNames = {
    "rho_gg", "rho_aa", "rho_bb", "re_rho01", "im_rho01",
    "re_rho02", "im_rho02", "re_rho12", "im_rho12"};

class StateVector9 {
 public:
  StateVector9() : v_(Vector9::Zero()) {}
  explicit StateVector9(const Vector9& v) : v_(v) {}

  static StateVector9 ground() {
    StateVector9 s;
    s.v_(0) = 1.0;
    return s;
  }

  double operator[](int i) const { return v_(i); }
  double& operator[](int i) { return v_(i); }
  double operator[](Component c) const { return v_(index(c)); }

  const Vector9& vector() const { return v_; }

  double rho_gg() const { return v_(0); }
  double rho_aa() const { return v_(1); }
  double rho_bb() const { return v_(2); }
  std::complex<double> rho_01() const { return {v_(3), v_(4)}; }
  std::complex<double> rho_02() const { return {v_(5), v_(6)}; }
  std::complex<double> rho_12() const { return {v_(7), v_(8)}; }

  double trace() const { return v_(0) + v_(1) + v_(2); }

 private:
  Vector9 v_;
};

/// 3x3 complex matrix over (|0>, |1>, |2>); validity is checked by predicates.
struct DensityMatrix3 {
  Matrix3c value = Matrix3c::Zero();

  /// max |rho - rho^dagger|
  double hermiticity_error() const;
  std::complex<double> trace() const { return value.trace(); }
  /// Smallest eigenvalue of the Hermitian part.
  double min_eigenvalue() const;
  /// Hermitian within 1e-12, trace 1 within 1e-10, eigenvalues >= -1e-10.
  bool is_physical() const;
};

/// Throws InvalidState if `rho` is not Hermitian within 1e-12.
StateVector9 to_state_vector(const DensityMatrix3& rho);

/// Inverse of to_state_vector; no renormalisation.
DensityMatrix3 to_density_matrix(const StateVector9& v);

/// Smallest eigenvalue of the reconstructed density matrix.
double min_eigenvalue(const StateVector9& v);

enum class Provenance { PrintedForm, GenericLindblad };

std::string_view to_string(Provenance p);

struct LiouvilleMatrix {
  Matrix9 matrix = Matrix9::Zero();
  Provenance provenance = Provenance::PrintedForm;
  SystemParams params;

  /// Largest |column sum| over the three population rows.
  double trace_defect() const;
  double norm_inf() const;
};

/// Individual rates and optional pure-dephasing channels of the Lindblad form.
struct LindbladRates {
  double gamma11 = 0.0;
  double gamma22 = 0.0;
  bool separate_dephasing = false;
  double dephasing1 = 0.0;  ///< Gamma_inh,11, used only when separate_dephasing
  double dephasing2 = 0.0;  ///< Gamma_inh,22

  /// Gamma11 = Gamma22 = p.gamma, no dephasing channels.
  static LindbladRates symmetric(const SystemParams& p) { return {p.gamma, p.gamma}; }
};

/// Generator with entries transcribed from the closed 9x9 form
/// (symmetric individual decay, thermal occupation n_nu).
LiouvilleMatrix build_matrix(const SystemParams& p);

/// Generator constructed by applying the Lindblad right-hand side to each
/// Hermitian basis element. p.gamma is ignored in favour of `rates`.
LiouvilleMatrix build_from_lindblad(const SystemParams& p, const LindbladRates& rates);

/// Symmetric rates from p, no dephasing.
LiouvilleMatrix build_from_lindblad(const SystemParams& p);

/// Generator used by the solvers: the closed form when n_nu == 0, the Lindblad
/// construction otherwise (the two disagree in one thermal entry).
LiouvilleMatrix build_generator(const SystemParams& p);

/// Right-hand side d rho / dt of the master equation.
Matrix3c master_equation_rhs(const SystemParams& p, const LindbladRates& rates,
                             const Matrix3c& rho);

/// One entry where two generators differ by more than `tol`.
struct EntryMismatch {
  int row;  ///< 0-based
  int col;  ///< 0-based
  double first;
  double second;
};

std::vector<EntryMismatch> compare_generators(const LiouvilleMatrix& a, const LiouvilleMatrix& b,
                                              double tol);

/// All nine eigenvalues, sorted by real part descending (ties: imaginary part
/// descending). Throws NumericalError on eigensolver failure.
std::vector<std::complex<double>> spectrum(const LiouvilleMatrix& m);

}  // namespace ret
