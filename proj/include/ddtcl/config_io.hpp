#pragma once

#include <iosfwd>
#include <string>

#include "ddtcl/model.hpp"

namespace ddtcl {

/// Parse the flat `key = value` format: one entry per line, `#` starts a
/// comment, keys are SimConfig / Numerics field names. Unknown or repeated keys
/// and unparsable values raise ConfigError naming the line. `pulse_interval`
/// accepts `none`; `initial_rho10` accepts `re` or `re,im`.
SimConfig parse_config(std::istream& in);
SimConfig load_config(const std::string& path);

/// Inverse of parse_config (round-trips every field).
std::string format_config(const SimConfig& config);

/// Trajectory CSV header, without the trailing newline.
inline constexpr const char* kCsvHeader =
    "t,t_cycles,np,rho11,re_rho10,im_rho10,abs_rho10,gamma11,re_gamma10,im_gamma10,eta11";

/// Fixed scientific formatting with 15 significant digits.
std::string format_number(double value);

std::string format_csv_row(const Sample& sample);
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

}  // namespace ddtcl
