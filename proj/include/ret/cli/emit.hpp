#pragma once

// CSV, JSON and SVG writers. Numbers carry 17 significant digits, lines end
// in LF, and NaN is written as "nan".

#include <array>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "ret/cli/sweep.hpp"

namespace ret::cli {

enum class Format { Csv, Json, Svg };

/// Throws ConfigError for anything but csv, json, svg.
Format parse_format(std::string_view s);

inline constexpr std::array<std::string_view, 24> kCsvColumns = {
    "axis_value", "delta1",   "delta2",   "omega",        "coupling",   "gamma",
    "gamma_h",    "rho_gg",   "rho_aa",   "rho_bb",       "re_rho01",   "im_rho01",
    "re_rho02",   "im_rho02", "re_rho12", "im_rho12",     "kappa",      "eta",
    "kappa_strong", "kappa_weak", "kappa_forster", "regime", "residual", "gap"};

std::string format_double(double x);

void write_csv(std::ostream& out, const std::vector<RunRecord>& records);
void write_json(std::ostream& out, const std::vector<RunRecord>& records);

/// Inverse of write_json.
std::vector<RunRecord> read_json(const std::string& text);

struct PlotSpec {
  std::string y_field = "kappa";  ///< a RunRecord column, or abs_rho12
  bool log_x = false;
  bool log_y = false;
};

/// One polyline per series.
void write_svg(std::ostream& out, const std::vector<RunRecord>& records, const PlotSpec& plot);

void write_dynamics_csv(std::ostream& out, const std::vector<DynamicsRun>& runs);
void write_dynamics_json(std::ostream& out, const std::vector<DynamicsRun>& runs);
/// rho_bb against log time, one polyline per run.
void write_dynamics_svg(std::ostream& out, const std::vector<DynamicsRun>& runs);

}  // namespace ret::cli
