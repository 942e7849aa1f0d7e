#pragma once

// Parameter sweeps over separation, Rabi frequency or donor detuning, and the
// dynamics runs behind the time-domain figures.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ret/cli/config.hpp"
#include "ret/dynamics.hpp"
#include "ret/params.hpp"

namespace ret::cli {

inline constexpr int kSchemaVersion = 1;

enum class Axis { Xi, Rabi, Delta1 };
enum class GridKind { Linear, Log };
enum class CouplingMode { Fixed, FromXi };
enum class GammaHMode { Fixed, Exact };

struct SweepSpec {
  Axis axis = Axis::Xi;
  GridKind grid = GridKind::Log;
  double start = 1e-3;
  double stop = 1.0;
  std::size_t count = 2;
  std::vector<SystemParams> series;  ///< one base parameter set per curve
  CouplingMode coupling_mode = CouplingMode::Fixed;
  GammaHMode gamma_h_mode = GammaHMode::Fixed;
  double theta = 1.5707963267948966;
  double gamma_rad = 1e-9;           ///< radiative rate entering Delta(xi) and f(xi)
  std::optional<double> xi;          ///< separation for non-xi axes in from-xi mode
  std::string plot = "kappa";

  /// Throws ConfigError when the invariants fail.
  void validate() const;
  std::vector<double> axis_values() const;
};

struct RunRecord {
  std::size_t series = 0;
  std::size_t index = 0;
  double axis_value = 0;
  SystemParams params;
  std::array<double, 9> state{};
  double kappa = 0;
  double eta = 0;
  double abs_rho12 = 0;
  double kappa_strong = 0;
  double kappa_weak = 0;
  double kappa_forster = 0;
  std::string regime;
  double residual = 0;
  double gap = 0;
  std::string error;  ///< empty on success

  bool failed() const { return !error.empty(); }
  /// NaN in any steady-state derived field (expansions excluded).
  bool has_nan() const;
};

/// Builds a spec from config keys. Throws ConfigError.
SweepSpec sweep_from_config(const Config& cfg);

/// Resolved model parameters of one config (series handling excluded).
SystemParams params_from_config(const Config& cfg);

/// Evaluates one grid point; numerical failures land in `error`.
RunRecord evaluate_point(const SweepSpec& spec, std::size_t series, std::size_t index,
                         double axis_value);

/// All points, series-major then grid order, independent of `workers`.
std::vector<RunRecord> run_sweep(const SweepSpec& spec, unsigned workers = 1);

struct DynamicsSpec {
  std::vector<SystemParams> series;
  std::vector<double> times;
  PropagationOptions options;
  double window_decades = 1.0;
};

struct DynamicsRun {
  SystemParams params;
  Trajectory trajectory;
  DampingRegime damping = DampingRegime::Over;
  double ness_rho_bb = 0;
  std::optional<double> asymptote_rho_bb;  ///< empty when not converged
  std::string error;
};

DynamicsSpec dynamics_from_config(const Config& cfg);
std::vector<DynamicsRun> run_dynamics(const DynamicsSpec& spec);

}  // namespace ret::cli
