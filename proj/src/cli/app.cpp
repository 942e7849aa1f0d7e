#include "ret/cli/app.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ret/cli/config.hpp"
#include "ret/cli/emit.hpp"
#include "ret/cli/presets.hpp"
#include "ret/cli/sweep.hpp"
#include "ret/errors.hpp"
#include "ret/liouvillian.hpp"
#include "ret/ness.hpp"

namespace ret::cli {

namespace {

struct Options {
  std::string config_path;
  std::string preset;
  std::string format = "csv";
  std::string out_path = "-";
  unsigned workers = 1;
  std::optional<double> tol;
};

Config load_source(const Options& o) {
  if (!o.config_path.empty() && !o.preset.empty()) {
    throw ConfigError("--config and --preset are mutually exclusive");
  }
  if (!o.config_path.empty()) return Config::load(o.config_path);
  if (!o.preset.empty()) {
    const Preset& p = find_preset(o.preset);
    return Config::parse(std::string(p.text), "preset:" + std::string(p.name));
  }
  throw ConfigError("one of --config or --preset is required");
}

// Writes to --out, or to `out` for "-".
template <class Writer>
void emit_to(const Options& o, std::ostream& out, Writer&& write) {
  if (o.out_path == "-") {
    write(out);
    return;
  }
  std::ofstream file(o.out_path, std::ios::binary | std::ios::trunc);
  if (!file) throw ConfigError("cannot write '" + o.out_path + "'");
  write(file);
  file.flush();
  if (!file) throw ConfigError("write to '" + o.out_path + "' failed");
}

void emit_records(const Options& o, std::ostream& out, const std::vector<RunRecord>& records,
                  const PlotSpec& plot) {
  const Format f = parse_format(o.format);
  emit_to(o, out, [&](std::ostream& s) {
    if (f == Format::Csv) write_csv(s, records);
    if (f == Format::Json) write_json(s, records);
    if (f == Format::Svg) write_svg(s, records, plot);
  });
}

int status_of(const std::vector<RunRecord>& records, std::ostream& err) {
  std::size_t bad = 0;
  for (const auto& r : records) {
    if (r.failed() || r.has_nan()) {
      ++bad;
      err << "point " << r.series << ':' << r.index << " (axis " << format_double(r.axis_value)
          << "): " << (r.failed() ? r.error : "nan in result") << '\n';
    }
  }
  return bad ? kNumericalFailure : kSuccess;
}

PlotSpec plot_for(const SweepSpec& spec) {
  PlotSpec plot;
  plot.y_field = spec.plot;
  plot.log_x = spec.grid == GridKind::Log;
  plot.log_y = plot.log_x && spec.plot != "rho_aa" && spec.plot != "rho_bb";
  return plot;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  const SweepSpec spec = sweep_from_config(load_source(o));
  const auto records = run_sweep(spec, o.workers);
  emit_records(o, out, records, plot_for(spec));
  return status_of(records, err);
}

// Rewrites a point config as a two-point Rabi grid so sweep parsing applies;
// only the base parameters are evaluated.
Config as_point(Config cfg) {
  for (const char* k : {"axis", "grid", "start", "stop", "count"}) cfg.erase(k);
  cfg.set("axis", "rabi");
  cfg.set("grid", "linear");
  cfg.set("start", "0");
  cfg.set("stop", "1");
  cfg.set("count", "2");
  return cfg;
}

int cmd_ness(const Options& o, std::ostream& out, std::ostream& err) {
  const SweepSpec spec = sweep_from_config(as_point(load_source(o)));
  std::vector<RunRecord> records;
  for (std::size_t s = 0; s < spec.series.size(); ++s) {
    records.push_back(evaluate_point(spec, s, 0, spec.series[s].rabi));
  }
  PlotSpec plot;
  emit_records(o, out, records, plot);
  return status_of(records, err);
}

int cmd_dynamics(const Options& o, std::ostream& out, std::ostream& err) {
  Config cfg = load_source(o);
  if (o.tol) {
    std::ostringstream s;
    s.precision(17);
    s << *o.tol;
    cfg.set("tol", s.str());
  }
  const DynamicsSpec spec = dynamics_from_config(cfg);
  const auto runs = run_dynamics(spec);
  const Format f = parse_format(o.format);
  emit_to(o, out, [&](std::ostream& s) {
    if (f == Format::Csv) write_dynamics_csv(s, runs);
    if (f == Format::Json) write_dynamics_json(s, runs);
    if (f == Format::Svg) write_dynamics_svg(s, runs);
  });
  int status = kSuccess;
  for (const auto& run : runs) {
    if (!run.error.empty()) {
      err << "propagation failed: " << run.error << '\n';
      status = kNumericalFailure;
    }
  }
  return status;
}

int cmd_validate(const Options& o, std::ostream& out) {
  Config cfg = load_source(o);
  for (const char* k : {"coupling_mode", "gamma_h_mode", "theta", "gamma_rad", "xi", "plot"}) {
    cfg.erase(k);
  }
  const auto series = sweep_from_config(as_point(cfg)).series;
  const double tol = o.tol.value_or(1e-14);

  bool all = true;
  const auto report = [&](bool ok, const std::string& name, const std::string& detail) {
    out << (ok ? "PASS " : "FAIL ") << name << ' ' << detail << '\n';
    all = all && ok;
  };
  for (std::size_t s = 0; s < series.size(); ++s) {
    const SystemParams& p = series[s];
    const std::string tag = "[" + std::to_string(s) + "]";
    try {
      const auto printed = build_matrix(p);
      const auto lindblad = build_from_lindblad(p);
      const auto diff = compare_generators(printed, lindblad, tol);
      std::ostringstream d;
      d << diff.size() << " mismatched entries";
      for (const auto& e : diff) d << " (" << e.row + 1 << ',' << e.col + 1 << ')';
      report(diff.empty() || p.n_nu != 0.0, tag + " printed-vs-lindblad", d.str());

      const auto m = build_generator(p);
      const auto validity = validate_ness(m);
      report(validity.passed(), tag + " unique-attracting-ness",
             "zero_modes=" + std::to_string(validity.zero_modes) +
                 " gap=" + format_double(validity.spectral_gap));

      const auto block = solve_ness_block(m);
      const auto null = solve_ness_nullspace(m);
      const double agree = (block.state.vector() - null.state.vector()).cwiseAbs().maxCoeff();
      report(agree < 1e-9, tag + " block-vs-nullspace", "max_diff=" + format_double(agree));

      if (p.n_nu == 0.0) {
        const auto closed = ness_closed_form(p);
        double rel = 0;
        for (int i = 0; i < 9; ++i) {
          const double ref = null.state[i];
          const double scale = std::max(std::abs(ref), 1e-300);
          if (std::abs(ref) > 1e-14) rel = std::max(rel, std::abs(closed.state[i] - ref) / scale);
        }
        report(rel < 1e-6, tag + " closed-form-vs-nullspace", "max_rel=" + format_double(rel));
      }

      const auto phys = physicality(block.state);
      report(phys.trace_error < 1e-9 && phys.min_eigenvalue >= -1e-8, tag + " physical",
             "trace_error=" + format_double(phys.trace_error) +
                 " min_eig=" + format_double(phys.min_eigenvalue));
    } catch (const Error& e) {
      report(false, tag + " solve", e.what());
    }
  }
  return all ? kSuccess : kNumericalFailure;
}

int cmd_preset_dump(const Options& o, std::ostream& out) {
  if (o.preset.empty()) {
    for (const auto& p : presets()) out << p.name << ' ' << p.kind << '\n';
    return kSuccess;
  }
  const Preset& p = find_preset(o.preset);
  emit_to(o, out, [&](std::ostream& s) {
    s << "# preset " << p.name << " (" << p.kind << ")\n" << p.text;
  });
  return kSuccess;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Driven donor-acceptor energy transfer simulator", "retsim"};
  app.fallthrough();
  app.require_subcommand(1);
  Options o;
  double tol = 0;
  app.add_option("--config", o.config_path, "Config file (key = value)");
  app.add_option("--preset", o.preset, "Built-in parameter preset");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json", "svg"}));
  app.add_option("--out", o.out_path, "Output path, '-' for stdout");
  app.add_option("--workers", o.workers, "Sweep worker threads")->check(CLI::PositiveNumber);
  auto* tol_opt = app.add_option("--tol", tol,
                                 "Adaptive tolerance (dynamics) or comparison tolerance (validate)")
                      ->check(CLI::PositiveNumber);

  auto* ness = app.add_subcommand("ness", "Steady state of one parameter point");
  auto* dynamics = app.add_subcommand("dynamics", "Time evolution from the ground state");
  auto* sweep = app.add_subcommand("sweep", "Steady-state parameter sweep");
  auto* validate = app.add_subcommand("validate", "Cross-check generators and solvers");
  auto* dump = app.add_subcommand("preset-dump", "Print a preset, or list presets");

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kConfigFailure;
  }
  if (*tol_opt) o.tol = tol;

  try {
    if (*ness) return cmd_ness(o, out, err);
    if (*dynamics) return cmd_dynamics(o, out, err);
    if (*sweep) return cmd_sweep(o, out, err);
    if (*validate) return cmd_validate(o, out);
    if (*dump) return cmd_preset_dump(o, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigFailure;
  } catch (const InvalidParameter& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigFailure;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
  return kConfigFailure;
}

}  // namespace ret::cli
