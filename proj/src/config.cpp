#include "spdmlab/config.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "spdmlab/errors.hpp"

namespace spdm {

namespace {

// Defaults for the ring experiments are artifact choices (the figures do
// not state them); every value is overridable and written back out with
// each run.
const std::map<std::string, std::string>& default_table() {
  static const std::map<std::string, std::string> table = {
      {"run.seed", "12345"},

      {"ring.n", "110"},
      {"ring.n_s", "10"},
      {"ring.hopping", "1.0"},
      {"ring.onsite", "0.0"},
      {"ring.onsite_file", ""},
      {"ring.periodic", "true"},
      {"ring.interaction", "onsite"},
      {"ring.interaction_file", ""},
      {"ring.u_grid", "0,0.25,0.5,1.0"},
      {"ring.initial_subsystem", "0.0"},
      {"ring.decouple", "false"},

      {"thermal.beta", "1.0"},
      {"thermal.mu", "0.0"},
      {"thermal.basis", "site"},

      {"protocol.kind", "ri"},
      {"protocol.tau", "0.5"},
      {"protocol.n_strokes", "400"},
      {"protocol.hartree_update", "per_stroke"},

      {"gkls.gamma", "0.5"},
      {"gkls.method", "rk4"},
      {"gkls.dt", "0.01"},
      {"gkls.t_final", "200"},
      {"gkls.sample_every", "10"},

      {"two_site.eps1", "0.0"},
      {"two_site.eps2", "0.5"},
      {"two_site.hopping", "0.3"},
      {"two_site.gamma1", "0.5"},
      {"two_site.gamma2", "0.5"},
      {"two_site.f1", "0.2"},
      {"two_site.f2", "0.8"},
      {"two_site.u", "0.0"},
      {"two_site.n1_0", "0.0"},
      {"two_site.n2_0", "1.0"},
      {"two_site.c0_re", "0.1"},
      {"two_site.c0_im", "0.0"},

      {"integrator.method", "rk4"},
      {"integrator.dt", "0.01"},
      {"integrator.t_final", "200"},
      {"integrator.sample_every", "10"},
      {"integrator.clip", "true"},

      {"sweep.u_min", "0.0"},
      {"sweep.u_max", "3.0"},
      {"sweep.u_step", "0.05"},
      {"sweep.f2_min", "0.0"},
      {"sweep.f2_max", "1.0"},
      {"sweep.f2_step", "0.02"},

      {"steady.model", "two_site"},
      {"steady.eta", "0.5"},
      {"steady.tol", "1e-10"},
      {"steady.max_iter", "500"},

      {"oracle.model", "two_site"},
      {"oracle.n", "2"},
      {"oracle.t_final", "20"},
      {"oracle.dt", "0.001"},
      {"oracle.sample_every", "100"},
      {"oracle.t_probe", "0.5"},
      {"oracle.u_grid", "0,0.1,0.2"},
  };
  return table;
}

bool valid_key_syntax(const std::string& key) {
  const auto dot = key.find('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 == key.size()) return false;
  if (key.find('.', dot + 1) != std::string::npos) return false;
  for (char ch : key) {
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '.')) return false;
  }
  return true;
}

}  // namespace

std::string trim(const std::string& s) {
  const char* ws = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  if (t.empty()) throw ConfigError(what + ": expected a number, got an empty value");
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || errno == ERANGE) {
    throw ConfigError(what + ": '" + t + "' is not a valid number");
  }
  if (std::isnan(x)) throw ConfigError(what + ": NaN is not accepted");
  return x;
}

Config Config::defaults() {
  Config c;
  c.values_ = default_table();
  return c;
}

void Config::set(const std::string& key, const std::string& value) {
  if (!valid_key_syntax(key)) throw ConfigError("malformed key '" + key + "' (expected section.key)");
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown configuration key '" + key + "'");
  it->second = trim(value);
}

void Config::merge_text(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  std::set<std::string> seen;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = origin + ":" + std::to_string(lineno);
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'section.key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (!seen.insert(key).second) throw ConfigError(where + ": duplicate key '" + key + "'");
    try {
      set(key, line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
}

void Config::merge_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  merge_text(buf.str(), path);
}

void Config::apply_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("override '" + assignment + "' must look like section.key=value");
  }
  set(trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

bool Config::has(const std::string& key) const { return values_.count(key) != 0; }

const std::string& Config::raw(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown configuration key '" + key + "'");
  return it->second;
}

std::string Config::get_string(const std::string& key) const { return raw(key); }

double Config::get_double(const std::string& key) const {
  const std::string& v = raw(key);
  if (v == "inf" || v == "+inf" || v == "infinity") return INFINITY;
  return parse_real(v, key);
}

long long Config::get_int(const std::string& key) const {
  const std::string& v = raw(key);
  errno = 0;
  char* end = nullptr;
  const long long x = std::strtoll(v.c_str(), &end, 10);
  if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE) {
    throw ConfigError(key + ": '" + v + "' is not an integer");
  }
  return x;
}

std::size_t Config::get_count(const std::string& key) const {
  const long long x = get_int(key);
  if (x < 0) throw ConfigError(key + ": must be non-negative");
  return static_cast<std::size_t>(x);
}

bool Config::get_bool(const std::string& key) const {
  const std::string& v = raw(key);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(key + ": '" + v + "' is not a boolean (true/false)");
}

std::vector<double> Config::get_list(const std::string& key) const {
  const std::string& v = raw(key);
  std::vector<double> out;
  if (trim(v).empty()) return out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real(item, key));
  return out;
}

std::string Config::dump() const {
  std::ostringstream out;
  std::string section;
  for (const auto& [key, value] : values_) {
    const std::string s = key.substr(0, key.find('.'));
    if (s != section) {
      if (!section.empty()) out << '\n';
      section = s;
    }
    out << key << " = " << value << '\n';
  }
  return out.str();
}

}  // namespace spdm
