#include "ret/cli/presets.hpp"

#include "ret/errors.hpp"

namespace ret::cli {

namespace {

// Rate and yield against separation at R* = 0.1.
#define RATE_DISTANCE_BASE       \
  "version = 1\n"                \
  "delta1 = 0\n"                 \
  "r_star = 0.1\n"               \
  "gamma = 1e-4\n"               \
  "gamma_h = 1e-9\n"             \
  "axis = xi\n"                  \
  "grid = log\n"                 \
  "start = 1e-3\n"               \
  "stop = 1\n"                   \
  "count = 400\n"                \
  "coupling_mode = from-xi\n"    \
  "gamma_h_mode = fixed\n"       \
  "theta = 1.5707963267948966\n" \
  "gamma_rad = 1e-9\n"

#define RABI_BASE     \
  "version = 1\n"     \
  "delta1 = 0\n"      \
  "gamma = 1e-4\n"    \
  "gamma_h = 1e-9\n"  \
  "axis = rabi\n"     \
  "grid = linear\n"   \
  "start = 1e-4\n"    \
  "stop = 0.03\n"     \
  "count = 300\n"

#define DYNAMICS_BASE                         \
  "version = 1\n"                             \
  "delta1 = 0\n"                              \
  "r_star = 0.1\n"                            \
  "gamma = 1e-4\n"                            \
  "gamma_h = 1e-9\n"                          \
  "series_param = coupling\n"                 \
  "series_values = 4e-4, 2e-4, 1e-4, 5e-5\n"  \
  "t_grid = log\n"                            \
  "t_start = 1e2\n"                           \
  "t_stop = 1e7\n"                            \
  "t_count = 2000\n"                          \
  "backend = expm\n"                          \
  "window_decades = 1\n"

const std::vector<Preset> kPresets = {
    {"fig-rate-resonant", "sweep",
     "description = transfer rate vs separation, Omega = R*\n" RATE_DISTANCE_BASE
     "omega_over_r_star = 1\n"},
    {"fig-rate-offresonant", "sweep",
     "description = transfer rate vs separation, Omega 0.2% above R*\n" RATE_DISTANCE_BASE
     "omega_over_r_star = 1.002\n"},
    {"fig-rate-forster", "sweep",
     "description = transfer rate vs separation, weak laser Omega = 0.1 R*\n" RATE_DISTANCE_BASE
     "omega_over_r_star = 0.1\n"},
    {"fig-rate-strong-laser", "sweep",
     "description = transfer rate vs separation, Omega = 2 R*\n" RATE_DISTANCE_BASE
     "omega_over_r_star = 2\n"},
    {"fig-yield-distance", "sweep",
     "description = quantum yield vs separation for four drive strengths\n" RATE_DISTANCE_BASE
     "series_param = omega_over_r_star\n"
     "series_values = 1, 1.002, 0.1, 2\n"
     "plot = eta\n"},
    {"fig-yield-rabi", "sweep",
     "description = quantum yield vs Rabi frequency for R* = 0.01 and 0.02\n" RABI_BASE
     "coupling = 5e-4\n"
     "series_param = r_star\n"
     "series_values = 0.01, 0.02\n"
     "plot = eta\n"},
    {"fig-population-rabi", "sweep",
     "description = acceptor population vs Rabi frequency, R* = 0.01\n" RABI_BASE
     "coupling = 2e-4\n"
     "r_star = 0.01\n"
     "plot = rho_bb\n"},
    {"fig-coherence-rabi", "sweep",
     "description = donor-acceptor coherence vs Rabi frequency, R* = 0.01\n" RABI_BASE
     "coupling = 2e-4\n"
     "r_star = 0.01\n"
     "plot = abs_rho12\n"},
    {"fig-detuning", "sweep",
     "description = acceptor population vs donor detuning, Omega = 0.1, R* = 0.1 and 0.11\n"
     "version = 1\n"
     "omega = 0.1\n"
     "coupling = 5e-4\n"
     "gamma = 1e-4\n"
     "gamma_h = 1e-9\n"
     "delta1 = 0\n"
     "axis = delta1\n"
     "grid = linear\n"
     "start = -0.05\n"
     "stop = 0.05\n"
     "count = 2001\n"
     "series_param = r_star\n"
     "series_values = 0.1, 0.11\n"
     "plot = rho_bb\n"},
    {"fig-delta-xi", "sweep",
     "description = dipole-dipole coupling vs separation\n" RATE_DISTANCE_BASE
     "omega_over_r_star = 1\n"
     "plot = coupling\n"},
    {"fig-dynamics-resonant", "dynamics",
     "description = acceptor population vs time, Omega = R*\n" DYNAMICS_BASE
     "omega_over_r_star = 1\n"},
    {"fig-dynamics-detuned-minus", "dynamics",
     "description = acceptor population vs time, Omega = 0.97 R*\n" DYNAMICS_BASE
     "omega_over_r_star = 0.97\n"},
    {"fig-dynamics-detuned-plus", "dynamics",
     "description = acceptor population vs time, Omega = 1.03 R*\n" DYNAMICS_BASE
     "omega_over_r_star = 1.03\n"},
};

}  // namespace

const std::vector<Preset>& presets() { return kPresets; }

const Preset& find_preset(std::string_view name) {
  for (const auto& p : kPresets) {
    if (p.name == name) return p;
  }
  throw ConfigError("unknown preset '" + std::string(name) + "'");
}

}  // namespace ret::cli
