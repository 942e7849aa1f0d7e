#include "ret/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "ret/errors.hpp"

namespace ret {

namespace {

void check_grid(std::span<const double> t_grid) {
  if (t_grid.empty()) throw InvalidParameter("time grid is empty");
  if (!(t_grid.front() >= 0.0)) throw InvalidParameter("time grid must start at t >= 0");
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > t_grid[i - 1])) throw InvalidParameter("time grid must be strictly increasing");
  }
}

// Step propagators and the running state are kept in extended precision; on
// a log grid every step has a new length and rounding would otherwise
// accumulate in the trace.
std::vector<StateVector9> propagate_exponential(const Matrix9& m, const Vector9& v0,
                                                std::span<const double> t_grid) {
  using Matrix9L = Eigen::Matrix<long double, 9, 9>;
  using Vector9L = Eigen::Matrix<long double, 9, 1>;
  const Matrix9L ml = m.cast<long double>();
  std::vector<StateVector9> out;
  out.reserve(t_grid.size());
  Vector9L v = v0.cast<long double>();
  long double t = 0.0L;
  long double cached_dt = -1.0L;
  Matrix9L step;
  for (double target : t_grid) {
    const long double dt = static_cast<long double>(target) - t;
    if (dt > 0.0L) {
      if (dt != cached_dt) {
        step = (ml * dt).exp();
        cached_dt = dt;
      }
      v = step * v;
    }
    t = target;
    out.emplace_back(v.cast<double>());
  }
  return out;
}

// Dormand-Prince 5(4), FSAL. The error test is per unit step: a step of
// length h may commit tol * h / span, so the accumulated error over the whole
// span stays near tol instead of growing with the step count.
class DormandPrince {
 public:
  DormandPrince(const Matrix9& m, double tol, double span, std::size_t max_steps)
      : m_(m), tol_(tol), span_(span), max_steps_(max_steps) {}

  // Advances v from t to t_end.
  void advance(Vector9& v, double& t, double t_end) {
    if (h_ <= 0.0) {
      const double rate = m_.cwiseAbs().rowwise().sum().maxCoeff();
      h_ = rate > 0 ? 0.1 / rate : t_end - t;
    }
    Vector9 k1 = m_ * v;
    while (t < t_end) {
      if (++steps_ > max_steps_) {
        throw StiffnessFailure("adaptive step budget exhausted; use the exponential backend");
      }
      const bool last = t + h_ >= t_end;
      const double h = last ? t_end - t : h_;
      if (h <= 16 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
        throw StiffnessFailure("adaptive step size underflow; use the exponential backend");
      }

      const Vector9 k2 = m_ * (v + h * (a21 * k1));
      const Vector9 k3 = m_ * (v + h * (a31 * k1 + a32 * k2));
      const Vector9 k4 = m_ * (v + h * (a41 * k1 + a42 * k2 + a43 * k3));
      const Vector9 k5 = m_ * (v + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      const Vector9 k6 = m_ * (v + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      const Vector9 y = v + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      const Vector9 k7 = m_ * y;
      const Vector9 err =
          h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

      const double budget = tol_ * std::min(1.0, h / span_);
      double norm = 0.0;
      for (int i = 0; i < 9; ++i) {
        const double scale = budget * (1.0 + std::max(std::abs(v(i)), std::abs(y(i))));
        norm += (err(i) / scale) * (err(i) / scale);
      }
      norm = std::sqrt(norm / 9);

      if (norm <= 1.0) {
        t = last ? t_end : t + h;
        v = y;
        k1 = k7;
      }
      const double factor =
          norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(norm, -0.25), 0.2, 5.0);
      // A truncated final step says nothing about the natural step size.
      if (!(last && norm <= 1.0)) h_ = h * factor;
    }
  }

 private:
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  // Fifth- minus fourth-order weights.
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  const Matrix9& m_;
  double tol_;
  double span_;
  std::size_t max_steps_;
  std::size_t steps_ = 0;
  double h_ = 0.0;
};

std::vector<StateVector9> propagate_adaptive(const Matrix9& m, const Vector9& v0,
                                             std::span<const double> t_grid, double tol,
                                             std::size_t max_steps) {
  if (!(tol > 0)) throw InvalidParameter("adaptive tolerance must be > 0");
  std::vector<StateVector9> out;
  out.reserve(t_grid.size());
  DormandPrince rk(m, tol, t_grid.back(), max_steps);
  Vector9 v = v0;
  double t = 0.0;
  for (double target : t_grid) {
    if (target > t) rk.advance(v, t, target);
    t = target;
    out.emplace_back(v);
  }
  return out;
}

}  // namespace

std::string_view to_string(Backend b) {
  return b == Backend::Exponential ? "expm" : "rk45";
}

std::vector<double> Trajectory::component(Component c) const {
  std::vector<double> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(s[c]);
  return out;
}

Trajectory propagate(const LiouvilleMatrix& m, const StateVector9& v0,
                     std::span<const double> t_grid, const PropagationOptions& opts) {
  check_grid(t_grid);
  if (!m.matrix.allFinite() || !v0.vector().allFinite()) {
    throw InvalidParameter("non-finite generator or initial state");
  }
  Trajectory traj;
  traj.params = m.params;
  traj.times.assign(t_grid.begin(), t_grid.end());
  traj.states = opts.backend == Backend::Exponential
                    ? propagate_exponential(m.matrix, v0.vector(), t_grid)
                    : propagate_adaptive(m.matrix, v0.vector(), t_grid, opts.tol, opts.max_steps);
  return traj;
}

std::vector<double> log_time_grid(double start, double stop, std::size_t count) {
  if (!(start > 0) || !(stop > start) || count < 2) {
    throw InvalidParameter("log grid needs 0 < start < stop and count >= 2");
  }
  std::vector<double> out(count);
  const double a = std::log10(start);
  const double b = std::log10(stop);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  out.front() = start;
  out.back() = stop;
  return out;
}

std::vector<double> linear_time_grid(double start, double stop, std::size_t count) {
  if (!(stop > start) || count < 2) {
    throw InvalidParameter("linear grid needs start < stop and count >= 2");
  }
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  out.back() = stop;
  return out;
}

std::vector<double> default_time_grid() { return log_time_grid(1e2, 1e7, 2000); }

std::string_view to_string(DampingRegime r) {
  switch (r) {
    case DampingRegime::Under:
      return "under";
    case DampingRegime::Critical:
      return "critical";
    case DampingRegime::Over:
      return "over";
  }
  return "over";
}

DampingRegime damping_regime(const SystemParams& p) {
  const double coupling = std::abs(p.coupling);
  if (std::abs(coupling - p.gamma) <= 1e-12 * p.gamma) return DampingRegime::Critical;
  return coupling > p.gamma ? DampingRegime::Under : DampingRegime::Over;
}

AsymptoteEstimate asymptote_estimate(const Trajectory& traj, Component c, double window_decades,
                                     double max_drift) {
  if (traj.times.size() != traj.states.size() || traj.times.size() < 2) {
    throw InvalidParameter("trajectory needs at least two samples");
  }
  const double t_end = traj.times.back();
  const double t_begin = t_end / std::pow(10.0, window_decades);
  const auto first = std::lower_bound(traj.times.begin(), traj.times.end(), t_begin);
  const std::size_t i0 = static_cast<std::size_t>(first - traj.times.begin());
  if (traj.times.size() - i0 < 2) throw NotConverged("asymptote window holds fewer than two samples");

  double integral = 0.0;
  double lo = traj.states[i0][c];
  double hi = lo;
  for (std::size_t i = i0 + 1; i < traj.times.size(); ++i) {
    const double y0 = traj.states[i - 1][c];
    const double y1 = traj.states[i][c];
    integral += 0.5 * (y0 + y1) * (traj.times[i] - traj.times[i - 1]);
    lo = std::min(lo, y1);
    hi = std::max(hi, y1);
  }
  AsymptoteEstimate est;
  est.value = integral / (t_end - traj.times[i0]);
  est.error = 0.5 * (hi - lo);
  const double spread = hi - lo;
  est.drift = spread == 0.0 ? 0.0 : spread / std::abs(est.value);
  if (!(est.drift <= max_drift)) {
    std::ostringstream msg;
    msg << "asymptote not converged: relative drift " << est.drift << " over the final window";
    throw NotConverged(msg.str());
  }
  return est;
}

double dominant_oscillation_frequency(const LiouvilleMatrix& m, const StateVector9& v0,
                                      Component c) {
  Eigen::EigenSolver<Matrix9> es(m.matrix, /*computeEigenvectors=*/true);
  if (es.info() != Eigen::Success) throw NumericalError("eigensolver did not converge");
  const Eigen::Matrix<std::complex<double>, 9, 9> vecs = es.eigenvectors();
  const Eigen::Matrix<std::complex<double>, 9, 1> coeff =
      vecs.partialPivLu().solve(v0.vector().cast<std::complex<double>>());
  const double scale = m.norm_inf();
  double best_amp = 0.0;
  double best_freq = 0.0;
  for (int k = 0; k < 9; ++k) {
    const auto lambda = es.eigenvalues()(k);
    if (std::abs(lambda.imag()) <= 1e-12 * scale) continue;
    const double amp = std::abs(coeff(k) * vecs(index(c), k));
    if (amp > best_amp) {
      best_amp = amp;
      best_freq = std::abs(lambda.imag());
    }
  }
  return best_freq;
}

}  // namespace ret
