#pragma once

// Flat `key = value` configuration with '#' comments.

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ret::cli {

class Config {
 public:
  /// Throws ConfigError on malformed lines, duplicate or unknown keys.
  static Config parse(const std::string& text, const std::string& origin = "<config>");
  static Config load(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  void set(const std::string& key, const std::string& value);
  void erase(const std::string& key) { values_.erase(key); }

  std::optional<std::string> text(const std::string& key) const;
  std::optional<double> number(const std::string& key) const;
  std::optional<long long> integer(const std::string& key) const;
  std::vector<double> number_list(const std::string& key) const;

  std::string text_or(const std::string& key, const std::string& fallback) const;
  double number_or(const std::string& key, double fallback) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
  std::string origin_;
};

/// Keys accepted by Config::parse.
const std::vector<std::string>& known_keys();

/// Parses a full-string decimal number; nullopt on trailing garbage.
std::optional<double> parse_number(const std::string& s);

}  // namespace ret::cli
