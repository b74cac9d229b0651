#pragma once

// Line-oriented run configuration:
//
//   # comment
//   section.key = value
//
// Every key must be one of the known defaults; unknown keys, duplicate
// keys within one file, and malformed lines raise ConfigError.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace spdm {

class Config {
 public:
  /// All known keys with their default values.
  static Config defaults();

  /// Parses config text on top of the current values. `origin` labels
  /// error messages.
  void merge_text(const std::string& text, const std::string& origin = "<text>");
  void merge_file(const std::string& path);
  /// "section.key=value"
  void apply_override(const std::string& assignment);
  void set(const std::string& key, const std::string& value);

  bool has(const std::string& key) const;
  const std::string& raw(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  double get_double(const std::string& key) const;
  long long get_int(const std::string& key) const;
  std::size_t get_count(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  /// Comma-separated reals.
  std::vector<double> get_list(const std::string& key) const;

  /// Effective configuration in the input format, keys sorted; feeding it
  /// back through merge_text reproduces this object.
  std::string dump() const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

/// Parses a real; the whole string must be consumed. Throws ConfigError.
double parse_real(const std::string& text, const std::string& what);

/// Trims ASCII whitespace from both ends.
std::string trim(const std::string& s);

}  // namespace spdm
