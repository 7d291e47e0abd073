#include "ddtcl/config_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace ddtcl {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + text + "'");
  }
  if (used != text.size()) throw ConfigError("not a number: '" + text + "'");
  return v;
}

std::int64_t to_integer(const std::string& text) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError("not an integer: '" + text + "'");
  }
  return v;
}

int to_int(const std::string& text) {
  const auto v = to_integer(text);
  if (v < INT32_MIN || v > INT32_MAX) throw ConfigError("integer out of range: '" + text + "'");
  return static_cast<int>(v);
}

Complex to_complex(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return {to_double(trim(text)), 0.0};
  return {to_double(trim(text.substr(0, comma))), to_double(trim(text.substr(comma + 1)))};
}

using Setter = std::function<void(SimConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"omega0", [](SimConfig& c, const std::string& v) { c.omega0 = to_double(v); }},
      {"omega_c", [](SimConfig& c, const std::string& v) { c.omega_c = to_double(v); }},
      {"kT", [](SimConfig& c, const std::string& v) { c.kT = to_double(v); }},
      {"alpha", [](SimConfig& c, const std::string& v) { c.alpha = to_double(v); }},
      {"pulse_interval",
       [](SimConfig& c, const std::string& v) {
         if (v == "none" || v == "off") {
           c.pulse_interval.reset();
         } else {
           c.pulse_interval = to_double(v);
         }
       }},
      {"t_final", [](SimConfig& c, const std::string& v) { c.t_final = to_double(v); }},
      {"initial_rho11", [](SimConfig& c, const std::string& v) { c.initial_rho11 = to_double(v); }},
      {"initial_rho10", [](SimConfig& c, const std::string& v) { c.initial_rho10 = to_complex(v); }},
      {"rel_tol", [](SimConfig& c, const std::string& v) { c.numerics.rel_tol = to_double(v); }},
      {"omega_max_factor",
       [](SimConfig& c, const std::string& v) { c.numerics.omega_max_factor = to_double(v); }},
      {"max_panels", [](SimConfig& c, const std::string& v) { c.numerics.max_panels = to_int(v); }},
      {"min_nodes_per_oscillation",
       [](SimConfig& c, const std::string& v) { c.numerics.min_nodes_per_oscillation = to_int(v); }},
      {"substeps", [](SimConfig& c, const std::string& v) { c.numerics.substeps = to_int(v); }},
      {"steps", [](SimConfig& c, const std::string& v) { c.numerics.steps = to_integer(v); }},
      {"sample_stride",
       [](SimConfig& c, const std::string& v) { c.numerics.sample_stride = to_int(v); }},
      {"kernel_method",
       [](SimConfig& c, const std::string& v) { c.numerics.kernel_method = parse_kernel_method(v); }},
  };
  return table;
}

}  // namespace

SimConfig parse_config(std::istream& in) {
  SimConfig config;
  std::set<std::string> seen;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(number) + ": ";
    if (eq == std::string::npos) throw ConfigError(where + "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError(where + "unknown key '" + key + "'");
    if (!seen.insert(key).second) throw ConfigError(where + "duplicate key '" + key + "'");
    if (value.empty()) throw ConfigError(where + "missing value for '" + key + "'");
    try {
      it->second(config, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + key + ": " + e.what());
    }
  }
  config.validate();
  return config;
}

SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open config file '" + path + "'");
  return parse_config(in);
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.14e", value);
  return buf;
}

std::string format_config(const SimConfig& c) {
  auto format_number = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  std::ostringstream out;
  out << "omega0 = " << format_number(c.omega0) << '\n'
      << "omega_c = " << format_number(c.omega_c) << '\n'
      << "kT = " << format_number(c.kT) << '\n'
      << "alpha = " << format_number(c.alpha) << '\n'
      << "pulse_interval = " << (c.pulse_interval ? format_number(*c.pulse_interval) : "none")
      << '\n'
      << "t_final = " << format_number(c.t_final) << '\n'
      << "initial_rho11 = " << format_number(c.initial_rho11) << '\n'
      << "initial_rho10 = " << format_number(c.initial_rho10.real()) << ", "
      << format_number(c.initial_rho10.imag()) << '\n'
      << "rel_tol = " << format_number(c.numerics.rel_tol) << '\n'
      << "omega_max_factor = " << format_number(c.numerics.omega_max_factor) << '\n'
      << "max_panels = " << c.numerics.max_panels << '\n'
      << "min_nodes_per_oscillation = " << c.numerics.min_nodes_per_oscillation << '\n'
      << "substeps = " << c.numerics.substeps << '\n'
      << "steps = " << c.numerics.steps << '\n'
      << "sample_stride = " << c.numerics.sample_stride << '\n'
      << "kernel_method = " << to_string(c.numerics.kernel_method) << '\n';
  return out.str();
}

std::string format_csv_row(const Sample& s) {
  std::string row;
  row.reserve(256);
  auto add = [&](double v) {
    if (!row.empty()) row += ',';
    row += format_number(v);
  };
  add(s.t);
  add(to_cycles(s.t));
  row += ',' + std::to_string(s.pulse_count);
  add(s.state.rho11);
  add(s.state.rho10.real());
  add(s.state.rho10.imag());
  add(std::abs(s.state.rho10));
  add(s.kernels.gamma11);
  add(s.kernels.gamma10.real());
  add(s.kernels.gamma10.imag());
  add(s.kernels.eta11);
  return row;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  out << kCsvHeader << '\n';
  for (const auto& s : trajectory.samples) out << format_csv_row(s) << '\n';
}

}  // namespace ddtcl
