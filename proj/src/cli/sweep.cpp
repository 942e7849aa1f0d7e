#include "ret/cli/sweep.hpp"

#include <atomic>
#include <cstdio>
#include <cmath>
#include <limits>
#include <thread>

#include "ret/errors.hpp"
#include "ret/liouvillian.hpp"
#include "ret/ness.hpp"
#include "ret/observables.hpp"

namespace ret::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const char* const kSeriesKeys[] = {"r_star", "omega", "omega_over_r_star", "coupling",
                                   "delta1", "gamma",  "gamma_h",           "n_nu"};

std::string format_key_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// One config per curve, with the series parameter substituted.
std::vector<Config> expand_series(const Config& cfg) {
  const auto param = cfg.text("series_param");
  const auto values = cfg.number_list("series_values");
  if (!param) {
    if (!values.empty()) throw ConfigError("series_values given without series_param");
    return {cfg};
  }
  bool known = false;
  for (const char* k : kSeriesKeys) known = known || *param == k;
  if (!known) throw ConfigError("series_param '" + *param + "' cannot be swept");
  if (values.empty()) throw ConfigError("series_param given without series_values");
  if (cfg.has(*param)) throw ConfigError("'" + *param + "' is both fixed and a series");

  std::vector<Config> out;
  for (double v : values) {
    Config c = cfg;
    c.set(*param, format_key_value(v));
    out.push_back(std::move(c));
  }
  return out;
}

template <class Enum>
Enum pick(const Config& cfg, const std::string& key, const std::string& fallback,
          std::initializer_list<std::pair<const char*, Enum>> table) {
  const std::string v = cfg.text_or(key, fallback);
  for (const auto& [name, e] : table) {
    if (v == name) return e;
  }
  throw ConfigError("invalid value '" + v + "' for '" + key + "'");
}

double nan_on_error(auto&& f) {
  try {
    return f();
  } catch (const Error&) {
    return kNaN;
  }
}

}  // namespace

bool RunRecord::has_nan() const {
  for (double x : state) {
    if (std::isnan(x)) return true;
  }
  return std::isnan(kappa) || std::isnan(eta) || std::isnan(residual) || std::isnan(gap);
}

SystemParams params_from_config(const Config& cfg) {
  SystemParams p;
  p.delta1 = cfg.number_or("delta1", 0.0);
  const auto delta2 = cfg.number("delta2");
  const auto r_star = cfg.number("r_star");
  if (delta2 && r_star) throw ConfigError("give either delta2 or r_star, not both");
  p.delta2 = delta2 ? *delta2 : p.delta1 - r_star.value_or(0.0);

  const auto omega = cfg.number("omega");
  const auto ratio = cfg.number("omega_over_r_star");
  if (omega && ratio) throw ConfigError("give either omega or omega_over_r_star, not both");
  p.rabi = omega ? *omega : ratio.value_or(0.0) * p.r_star();

  p.coupling = cfg.number_or("coupling", 0.0);
  p.gamma = cfg.number_or("gamma", p.gamma);
  p.gamma_h = cfg.number_or("gamma_h", p.gamma_h);
  p.n_nu = cfg.number_or("n_nu", 0.0);
  try {
    p.validate();
  } catch (const InvalidParameter& e) {
    throw ConfigError(e.what());
  }
  return p;
}

void SweepSpec::validate() const {
  if (count < 2) throw ConfigError("count must be >= 2");
  if (!(start < stop)) throw ConfigError("start must be < stop");
  if (grid == GridKind::Log && !(start > 0)) throw ConfigError("log grid requires start > 0");
  if (series.empty()) throw ConfigError("no parameter series");
  if (coupling_mode == CouplingMode::FromXi && axis != Axis::Xi && !xi) {
    throw ConfigError("coupling_mode = from-xi needs the xi key off the xi axis");
  }
  if (axis == Axis::Xi && coupling_mode == CouplingMode::Fixed &&
      gamma_h_mode == GammaHMode::Fixed) {
    throw ConfigError("xi axis with fixed coupling and gamma_h does not depend on xi");
  }
  if (!(gamma_rad > 0)) throw ConfigError("gamma_rad must be > 0");
}

std::vector<double> SweepSpec::axis_values() const {
  return grid == GridKind::Log ? log_time_grid(start, stop, count)
                               : linear_time_grid(start, stop, count);
}

SweepSpec sweep_from_config(const Config& cfg) {
  SweepSpec s;
  s.axis = pick<Axis>(cfg, "axis", "xi",
                      {{"xi", Axis::Xi}, {"rabi", Axis::Rabi}, {"delta1", Axis::Delta1}});
  s.grid = pick<GridKind>(cfg, "grid", "log",
                          {{"log", GridKind::Log}, {"linear", GridKind::Linear}});
  s.coupling_mode = pick<CouplingMode>(
      cfg, "coupling_mode", s.axis == Axis::Xi ? "from-xi" : "fixed",
      {{"fixed", CouplingMode::Fixed}, {"from-xi", CouplingMode::FromXi}});
  s.gamma_h_mode = pick<GammaHMode>(cfg, "gamma_h_mode", "fixed",
                                    {{"fixed", GammaHMode::Fixed}, {"exact", GammaHMode::Exact}});
  const auto start = cfg.number("start");
  const auto stop = cfg.number("stop");
  const auto count = cfg.integer("count");
  if (!start || !stop || !count) throw ConfigError("a sweep needs start, stop and count");
  if (*count < 2) throw ConfigError("count must be >= 2");
  s.start = *start;
  s.stop = *stop;
  s.count = static_cast<std::size_t>(*count);
  s.theta = cfg.number_or("theta", s.theta);
  s.gamma_rad = cfg.number_or("gamma_rad", cfg.number_or("gamma_h", s.gamma_rad));
  s.xi = cfg.number("xi");
  s.plot = cfg.text_or("plot", "kappa");
  const char* const plots[] = {"kappa", "eta", "rho_bb", "rho_aa", "abs_rho12", "coupling"};
  bool plot_ok = false;
  for (const char* k : plots) plot_ok = plot_ok || s.plot == k;
  if (!plot_ok) throw ConfigError("invalid value '" + s.plot + "' for 'plot'");

  for (const Config& c : expand_series(cfg)) s.series.push_back(params_from_config(c));
  s.validate();
  return s;
}

RunRecord evaluate_point(const SweepSpec& spec, std::size_t series, std::size_t index,
                         double axis_value) {
  RunRecord rec;
  rec.series = series;
  rec.index = index;
  rec.axis_value = axis_value;
  SystemParams p = spec.series.at(series);
  std::optional<double> xi = spec.xi;

  try {
    switch (spec.axis) {
      case Axis::Xi:
        xi = axis_value;
        break;
      case Axis::Rabi:
        p.rabi = axis_value;
        break;
      case Axis::Delta1: {
        const double r = p.r_star();
        p.delta1 = axis_value;
        p.delta2 = axis_value - r;
        break;
      }
    }
    if (xi) {
      const auto geom = DipoleGeometry::parallel(*xi, spec.theta);
      const RadiativeRates rates(spec.gamma_rad, spec.gamma_rad);
      if (spec.coupling_mode == CouplingMode::FromXi) p.coupling = rddi_coupling(geom, rates);
      if (spec.gamma_h_mode == GammaHMode::Exact) p.gamma_h = collective_decay(geom, rates);
    }
  } catch (const std::exception& e) {
    rec.params = p;
    rec.error = e.what();
  }
  rec.params = p;

  rec.kappa_strong = nan_on_error([&] { return strong_coupling_rate(p); });
  rec.kappa_weak = nan_on_error([&] { return weak_coupling_rate(p); });
  rec.kappa_forster = kNaN;
  if (xi) {
    SystemParams q = p;
    q.gamma_h = spec.gamma_rad;
    rec.kappa_forster = nan_on_error([&] { return forster_rate(q, *xi); });
  }

  const auto fail = [&](const std::string& what) {
    rec.error = what;
    rec.state.fill(kNaN);
    rec.kappa = rec.eta = rec.abs_rho12 = rec.residual = rec.gap = kNaN;
    rec.regime = "failed";
  };
  if (!rec.error.empty()) {
    fail(rec.error);
    return rec;
  }

  try {
    const LiouvilleMatrix m = build_generator(p);
    NessSolution ness;
    try {
      ness = solve_ness_block(m);
    } catch (const Error&) {
      ness = solve_ness_nullspace(m);
    }
    const RateReport report = rate_report(ness, p);
    for (int i = 0; i < 9; ++i) rec.state[static_cast<std::size_t>(i)] = ness.state[i];
    rec.kappa = report.kappa;
    rec.eta = report.eta;
    rec.abs_rho12 = std::abs(report.coherence_12);
    rec.regime = std::string(to_string(report.regime));
    rec.residual = ness.residual;
    rec.gap = ness.spectral_gap;
  } catch (const std::exception& e) {
    fail(e.what());
  }
  return rec;
}

std::vector<RunRecord> run_sweep(const SweepSpec& spec, unsigned workers) {
  spec.validate();
  const std::vector<double> axis = spec.axis_values();
  const std::size_t n = spec.series.size() * axis.size();
  std::vector<RunRecord> out(n);

  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t k = next++; k < n; k = next++) {
      const std::size_t s = k / axis.size();
      const std::size_t i = k % axis.size();
      out[k] = evaluate_point(spec, s, i, axis[i]);
    }
  };
  const unsigned pool = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
  std::vector<std::thread> threads;
  for (unsigned t = 1; t < pool; ++t) threads.emplace_back(work);
  work();
  for (auto& t : threads) t.join();
  return out;
}

DynamicsSpec dynamics_from_config(const Config& cfg) {
  DynamicsSpec d;
  for (const Config& c : expand_series(cfg)) d.series.push_back(params_from_config(c));

  const std::string kind = cfg.text_or("t_grid", "log");
  const double t_start = cfg.number_or("t_start", 1e2);
  const double t_stop = cfg.number_or("t_stop", 1e7);
  const auto t_count = cfg.integer("t_count").value_or(2000);
  if (t_count < 2) throw ConfigError("t_count must be >= 2");
  try {
    if (kind == "log") {
      d.times = log_time_grid(t_start, t_stop, static_cast<std::size_t>(t_count));
    } else if (kind == "linear") {
      if (t_start < 0) throw ConfigError("t_start must be >= 0");
      d.times = linear_time_grid(t_start, t_stop, static_cast<std::size_t>(t_count));
    } else {
      throw ConfigError("invalid value '" + kind + "' for 't_grid'");
    }
  } catch (const InvalidParameter& e) {
    throw ConfigError(e.what());
  }

  d.options.backend = pick<Backend>(cfg, "backend", "expm",
                                    {{"expm", Backend::Exponential}, {"rk45", Backend::AdaptiveRK}});
  d.options.tol = cfg.number_or("tol", d.options.tol);
  if (!(d.options.tol > 0)) throw ConfigError("tol must be > 0");
  d.window_decades = cfg.number_or("window_decades", 1.0);
  if (!(d.window_decades > 0)) throw ConfigError("window_decades must be > 0");
  return d;
}

std::vector<DynamicsRun> run_dynamics(const DynamicsSpec& spec) {
  std::vector<DynamicsRun> out;
  for (const SystemParams& p : spec.series) {
    DynamicsRun run;
    run.params = p;
    run.damping = damping_regime(p);
    try {
      const LiouvilleMatrix m = build_generator(p);
      run.trajectory = propagate(m, StateVector9::ground(), spec.times, spec.options);
      run.ness_rho_bb = solve_ness_block(m).state.rho_bb();
      try {
        run.asymptote_rho_bb =
            asymptote_estimate(run.trajectory, Component::AcceptorPopulation, spec.window_decades)
                .value;
      } catch (const NotConverged&) {
        run.asymptote_rho_bb.reset();
      }
    } catch (const std::exception& e) {
      char ctx[160];
      std::snprintf(ctx, sizeof ctx, " [omega=%.17g coupling=%.17g r_star=%.17g]", p.rabi,
                    p.coupling, p.r_star());
      run.error = e.what() + std::string(ctx);
    }
    out.push_back(std::move(run));
  }
  return out;
}

}  // namespace ret::cli
