#include "ret/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "ret/errors.hpp"

namespace ret::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      // model
      "delta1", "delta2", "r_star", "omega", "omega_over_r_star", "coupling", "gamma",
      "gamma_h", "n_nu",
      // sweep
      "axis", "grid", "start", "stop", "count", "coupling_mode", "gamma_h_mode", "theta",
      "gamma_rad", "xi", "series_param", "series_values", "plot",
      // dynamics
      "t_grid", "t_start", "t_stop", "t_count", "backend", "tol", "window_decades",
      // bookkeeping
      "preset", "version", "description"};
  return keys;
}

std::optional<double> parse_number(const std::string& s) {
  const std::string t = trim(s);
  if (t.empty()) return std::nullopt;
  const char* begin = t.data();
  if (*begin == '+') ++begin;
  double value = 0;
  const auto [ptr, ec] = std::from_chars(begin, t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size()) return std::nullopt;
  return value;
}

Config Config::parse(const std::string& text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  const auto& keys = known_keys();
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = origin + ":" + std::to_string(lineno);
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": empty key");
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
    if (cfg.has(key)) throw ConfigError(where + ": duplicate key '" + key + "'");
    cfg.values_[key] = value;
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

void Config::set(const std::string& key, const std::string& value) { values_[key] = value; }

std::optional<std::string> Config::text(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> Config::number(const std::string& key) const {
  const auto t = text(key);
  if (!t) return std::nullopt;
  const auto v = parse_number(*t);
  if (!v) throw ConfigError(origin_ + ": '" + key + "' is not a number: '" + *t + "'");
  return v;
}

std::optional<long long> Config::integer(const std::string& key) const {
  const auto v = number(key);
  if (!v) return std::nullopt;
  if (*v != static_cast<double>(static_cast<long long>(*v))) {
    throw ConfigError(origin_ + ": '" + key + "' must be an integer");
  }
  return static_cast<long long>(*v);
}

std::vector<double> Config::number_list(const std::string& key) const {
  std::vector<double> out;
  const auto t = text(key);
  if (!t) return out;
  std::istringstream in(*t);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto v = parse_number(item);
    if (!v) throw ConfigError(origin_ + ": bad entry '" + trim(item) + "' in '" + key + "'");
    out.push_back(*v);
  }
  return out;
}

std::string Config::text_or(const std::string& key, const std::string& fallback) const {
  return text(key).value_or(fallback);
}

double Config::number_or(const std::string& key, double fallback) const {
  return number(key).value_or(fallback);
}

}  // namespace ret::cli
