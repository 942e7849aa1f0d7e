#pragma once

// Time propagation of the nine-tuple under the generator, damping-regime
// classification and extraction of long-time asymptotes.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "ret/liouvillian.hpp"

namespace ret {

enum class Backend {
  Exponential,  ///< dense exp(M dt), reused across equal steps (default)
  AdaptiveRK,   ///< Dormand-Prince 5(4) with local error control
};

std::string_view to_string(Backend b);

struct PropagationOptions {
  Backend backend = Backend::Exponential;
  double tol = 1e-10;                  ///< adaptive backend error target over the span
  std::size_t max_steps = 50'000'000;  ///< adaptive backend step budget
};

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector9> states;
  SystemParams params;

  std::vector<double> component(Component c) const;
};

/// v(t) = exp(M t) v0 on every point of `t_grid` (strictly increasing, >= 0).
/// Throws StiffnessFailure if the adaptive step size underflows.
Trajectory propagate(const LiouvilleMatrix& m, const StateVector9& v0,
                     std::span<const double> t_grid, const PropagationOptions& opts = {});

/// `count` points, log-spaced on [start, stop]; start > 0.
std::vector<double> log_time_grid(double start, double stop, std::size_t count);
std::vector<double> linear_time_grid(double start, double stop, std::size_t count);

/// Default figure grid: t*nu from 1e2 to 1e7, 2000 log-spaced points.
std::vector<double> default_time_grid();

enum class DampingRegime { Under, Critical, Over };

std::string_view to_string(DampingRegime r);

/// Compares |Delta| with Gamma; equality within 1e-12 relative is critical.
DampingRegime damping_regime(const SystemParams& p);

struct AsymptoteEstimate {
  double value = 0;  ///< time average over the window
  double error = 0;  ///< half the peak-to-peak spread in the window
  double drift = 0;  ///< peak-to-peak spread relative to |value|
};

/// Time average of one component over the last `window_decades` of the grid.
/// Throws NotConverged when the relative drift exceeds `max_drift`.
AsymptoteEstimate asymptote_estimate(const Trajectory& traj, Component c,
                                     double window_decades = 1.0, double max_drift = 1e-3);

/// |Im lambda| of the oscillatory eigenmode carrying the largest amplitude of
/// component `c` in the evolution from `v0`; 0 when no mode oscillates.
double dominant_oscillation_frequency(const LiouvilleMatrix& m, const StateVector9& v0,
                                      Component c);

}  // namespace ret
