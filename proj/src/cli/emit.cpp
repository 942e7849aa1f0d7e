#include "ret/cli/emit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>

#include <json.hpp>

#include "ret/errors.hpp"
#include "ret/liouvillian.hpp"

namespace ret::cli {

namespace {

using nlohmann::json;

constexpr std::size_t kRegimeColumn = 21;

double numeric_column(const RunRecord& r, std::size_t i) {
  switch (i) {
    case 0: return r.axis_value;
    case 1: return r.params.delta1;
    case 2: return r.params.delta2;
    case 3: return r.params.rabi;
    case 4: return r.params.coupling;
    case 5: return r.params.gamma;
    case 6: return r.params.gamma_h;
    case 16: return r.kappa;
    case 17: return r.eta;
    case 18: return r.kappa_strong;
    case 19: return r.kappa_weak;
    case 20: return r.kappa_forster;
    case 22: return r.residual;
    case 23: return r.gap;
    default: break;
  }
  if (i >= 7 && i < 16) return r.state[i - 7];
  throw std::out_of_range("not a numeric column");
}

double& numeric_column_ref(RunRecord& r, std::size_t i) {
  switch (i) {
    case 0: return r.axis_value;
    case 1: return r.params.delta1;
    case 2: return r.params.delta2;
    case 3: return r.params.rabi;
    case 4: return r.params.coupling;
    case 5: return r.params.gamma;
    case 6: return r.params.gamma_h;
    case 16: return r.kappa;
    case 17: return r.eta;
    case 18: return r.kappa_strong;
    case 19: return r.kappa_weak;
    case 20: return r.kappa_forster;
    case 22: return r.residual;
    case 23: return r.gap;
    default: break;
  }
  if (i >= 7 && i < 16) return r.state[i - 7];
  throw std::out_of_range("not a numeric column");
}

double plot_value(const RunRecord& r, const std::string& field) {
  if (field == "abs_rho12") return r.abs_rho12;
  for (std::size_t i = 0; i < kCsvColumns.size(); ++i) {
    if (i != kRegimeColumn && kCsvColumns[i] == field) return numeric_column(r, i);
  }
  throw ConfigError("cannot plot field '" + field + "'");
}

json number_json(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

double json_number(const json& j) {
  if (j.is_number()) return j.get<double>();
  const std::string s = j.get<std::string>();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  throw ConfigError("bad number '" + s + "' in JSON records");
}

struct Curve {
  std::vector<std::pair<double, double>> points;
};

// Minimal line plot: frame, ticks, one polyline per curve.
void write_plot(std::ostream& out, const std::vector<Curve>& curves, bool log_x, bool log_y,
                const std::string& x_label, const std::string& y_label) {
  constexpr double kW = 640, kH = 420, kLeft = 80, kRight = 20, kTop = 20, kBottom = 50;
  const auto tx = [&](double v) { return log_x ? std::log10(v) : v; };
  const auto ty = [&](double v) { return log_y ? std::log10(v) : v; };

  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& c : curves) {
    for (const auto& [x, y] : c.points) {
      x0 = std::min(x0, tx(x));
      x1 = std::max(x1, tx(x));
      y0 = std::min(y0, ty(y));
      y1 = std::max(y1, ty(y));
    }
  }
  if (!(x0 < x1)) { x0 -= 0.5; x1 += 0.5; }
  if (!(y0 < y1)) { y0 -= 0.5; y1 += 0.5; }
  const auto px = [&](double v) { return kLeft + (tx(v) - x0) / (x1 - x0) * (kW - kLeft - kRight); };
  const auto py = [&](double v) { return kH - kBottom - (ty(v) - y0) / (y1 - y0) * (kH - kTop - kBottom); };
  const auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };
  const auto label = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return std::string(buf);
  };
  static const char* const kColors[] = {"#1f3a93", "#e67e22", "#27ae60", "#c0392b",
                                        "#8e44ad", "#7f8c8d"};

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
      << "\" viewBox=\"0 0 " << kW << ' ' << kH << "\">\n";
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kW - kLeft - kRight
      << "\" height=\"" << kH - kTop - kBottom << "\" fill=\"none\" stroke=\"black\"/>\n";

  const auto ticks = [](double lo, double hi, bool log) {
    std::vector<double> t;
    if (log) {
      for (double d = std::ceil(lo); d <= std::floor(hi); d += 1) t.push_back(std::pow(10.0, d));
    } else {
      for (int i = 0; i <= 4; ++i) t.push_back(lo + (hi - lo) * i / 4);
    }
    return t;
  };
  for (double v : ticks(x0, x1, log_x)) {
    const double x = px(v);
    out << "<line x1=\"" << fmt(x) << "\" y1=\"" << kH - kBottom << "\" x2=\"" << fmt(x)
        << "\" y2=\"" << kH - kBottom + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fmt(x) << "\" y=\"" << kH - kBottom + 18
        << "\" font-size=\"11\" text-anchor=\"middle\">" << label(v) << "</text>\n";
  }
  for (double v : ticks(y0, y1, log_y)) {
    const double y = py(v);
    out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << fmt(y) << "\" x2=\"" << kLeft
        << "\" y2=\"" << fmt(y) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << kLeft - 8 << "\" y=\"" << fmt(y + 4)
        << "\" font-size=\"11\" text-anchor=\"end\">" << label(v) << "</text>\n";
  }
  out << "<text x=\"" << (kLeft + kW - kRight) / 2 << "\" y=\"" << kH - 10
      << "\" font-size=\"12\" text-anchor=\"middle\">" << x_label << "</text>\n";
  out << "<text x=\"16\" y=\"" << (kTop + kH - kBottom) / 2
      << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << (kTop + kH - kBottom) / 2 << ")\">" << y_label << "</text>\n";

  for (std::size_t k = 0; k < curves.size(); ++k) {
    out << "<polyline fill=\"none\" stroke=\"" << kColors[k % 6] << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const auto& [x, y] : curves[k].points) {
      out << (first ? "" : " ") << fmt(px(x)) << ',' << fmt(py(y));
      first = false;
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
}

bool plottable(double v, bool log) { return std::isfinite(v) && (!log || v > 0); }

}  // namespace

Format parse_format(std::string_view s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  if (s == "svg") return Format::Svg;
  throw ConfigError("unknown format '" + std::string(s) + "'");
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << "# schema=" << kSchemaVersion << '\n';
  for (std::size_t i = 0; i < kCsvColumns.size(); ++i) out << (i ? "," : "") << kCsvColumns[i];
  out << '\n';
  for (const auto& r : records) {
    for (std::size_t i = 0; i < kCsvColumns.size(); ++i) {
      if (i) out << ',';
      out << (i == kRegimeColumn ? r.regime : format_double(numeric_column(r, i)));
    }
    out << '\n';
  }
}

void write_json(std::ostream& out, const std::vector<RunRecord>& records) {
  json doc;
  doc["schema"] = kSchemaVersion;
  doc["columns"] = kCsvColumns;
  json rows = json::array();
  for (const auto& r : records) {
    json row = json::object();
    row["series"] = r.series;
    row["index"] = r.index;
    for (std::size_t i = 0; i < kCsvColumns.size(); ++i) {
      const std::string key(kCsvColumns[i]);
      row[key] = i == kRegimeColumn ? json(r.regime) : number_json(numeric_column(r, i));
    }
    row["abs_rho12"] = number_json(r.abs_rho12);
    row["n_nu"] = number_json(r.params.n_nu);
    row["error"] = r.error;
    rows.push_back(std::move(row));
  }
  doc["records"] = std::move(rows);
  out << doc.dump(1) << '\n';
}

std::vector<RunRecord> read_json(const std::string& text) {
  std::vector<RunRecord> out;
  try {
    const json doc = json::parse(text);
    if (doc.at("schema").get<int>() != kSchemaVersion) throw ConfigError("unsupported schema");
    for (const auto& row : doc.at("records")) {
      RunRecord r;
      r.series = row.at("series").get<std::size_t>();
      r.index = row.at("index").get<std::size_t>();
      for (std::size_t i = 0; i < kCsvColumns.size(); ++i) {
        const std::string key(kCsvColumns[i]);
        if (i == kRegimeColumn) {
          r.regime = row.at(key).get<std::string>();
        } else {
          numeric_column_ref(r, i) = json_number(row.at(key));
        }
      }
      r.abs_rho12 = json_number(row.at("abs_rho12"));
      r.params.n_nu = json_number(row.at("n_nu"));
      r.error = row.at("error").get<std::string>();
      out.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed JSON records: ") + e.what());
  }
  return out;
}

void write_svg(std::ostream& out, const std::vector<RunRecord>& records, const PlotSpec& plot) {
  std::map<std::size_t, Curve> by_series;
  for (const auto& r : records) {
    const double x = r.axis_value;
    const double y = plot_value(r, plot.y_field);
    if (plottable(x, plot.log_x) && plottable(y, plot.log_y)) {
      by_series[r.series].points.emplace_back(x, y);
    }
  }
  std::vector<Curve> curves;
  for (auto& [s, c] : by_series) curves.push_back(std::move(c));
  write_plot(out, curves, plot.log_x, plot.log_y, "axis value", plot.y_field);
}

void write_dynamics_csv(std::ostream& out, const std::vector<DynamicsRun>& runs) {
  out << "# schema=" << kSchemaVersion << '\n';
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const auto& run = runs[k];
    out << "# series=" << k << " coupling=" << format_double(run.params.coupling)
        << " damping=" << to_string(run.damping)
        << " ness_rho_bb=" << format_double(run.ness_rho_bb) << " asymptote_rho_bb="
        << (run.asymptote_rho_bb ? format_double(*run.asymptote_rho_bb) : "not-converged");
    if (!run.error.empty()) out << " error=\"" << run.error << '"';
    out << '\n';
  }
  out << "series,coupling,omega,t";
  for (auto name : kComponentNames) out << ',' << name;
  out << '\n';
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const auto& run = runs[k];
    for (std::size_t i = 0; i < run.trajectory.times.size(); ++i) {
      out << k << ',' << format_double(run.params.coupling) << ','
          << format_double(run.params.rabi) << ',' << format_double(run.trajectory.times[i]);
      for (int c = 0; c < 9; ++c) out << ',' << format_double(run.trajectory.states[i][c]);
      out << '\n';
    }
  }
}

void write_dynamics_json(std::ostream& out, const std::vector<DynamicsRun>& runs) {
  json doc;
  doc["schema"] = kSchemaVersion;
  doc["components"] = kComponentNames;
  json series = json::array();
  for (const auto& run : runs) {
    json s;
    s["params"] = {{"delta1", number_json(run.params.delta1)},
                   {"delta2", number_json(run.params.delta2)},
                   {"omega", number_json(run.params.rabi)},
                   {"coupling", number_json(run.params.coupling)},
                   {"gamma", number_json(run.params.gamma)},
                   {"gamma_h", number_json(run.params.gamma_h)},
                   {"n_nu", number_json(run.params.n_nu)}};
    s["damping"] = std::string(to_string(run.damping));
    s["ness_rho_bb"] = number_json(run.ness_rho_bb);
    s["asymptote_rho_bb"] = run.asymptote_rho_bb ? number_json(*run.asymptote_rho_bb) : json(nullptr);
    s["error"] = run.error;
    json times = json::array();
    for (double t : run.trajectory.times) times.push_back(number_json(t));
    s["t"] = std::move(times);
    for (int c = 0; c < 9; ++c) {
      json col = json::array();
      for (const auto& st : run.trajectory.states) col.push_back(number_json(st[c]));
      s[std::string(kComponentNames[static_cast<std::size_t>(c)])] = std::move(col);
    }
    series.push_back(std::move(s));
  }
  doc["series"] = std::move(series);
  out << doc.dump(1) << '\n';
}

void write_dynamics_svg(std::ostream& out, const std::vector<DynamicsRun>& runs) {
  std::vector<Curve> curves;
  for (const auto& run : runs) {
    Curve c;
    for (std::size_t i = 0; i < run.trajectory.times.size(); ++i) {
      const double t = run.trajectory.times[i];
      const double y = run.trajectory.states[i].rho_bb();
      if (plottable(t, true) && std::isfinite(y)) c.points.emplace_back(t, y);
    }
    curves.push_back(std::move(c));
  }
  write_plot(out, curves, true, false, "t nu", "rho_bb");
}

}  // namespace ret::cli
