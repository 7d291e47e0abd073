#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ddtcl/model.hpp"
#include "ddtcl/oracles.hpp"

namespace ddtcl::cli {

enum ExitCode : int {
  kOk = 0,
  kBadConfig = 1,
  kNumericalFailure = 2,
  kIoFailure = 3,
  kToleranceExceeded = 4,
};

/// Command-line values that take precedence over the config file.
struct Overrides {
  std::optional<int> substeps;
  std::optional<double> rel_tol;

  void apply(SimConfig& config) const;
};

struct SweepOptions {
  /// Pulse intervals in qubit cycles 2 pi / omega0; a baseline without pulses always runs.
  std::vector<double> intervals_cycles;
  /// Times (in cycles) at which the summary reports rho11 and |rho10|.
  std::vector<double> probe_cycles{0.2, 0.5, 1.0};
};

enum class OracleMode { excitation, kernel };

struct OracleOptions {
  OracleMode mode = OracleMode::excitation;
  int modes = kDefaultOracleModes;
  double span = kDefaultOracleSpan;  ///< oracle bath covers [0, span * omega_c]
  double max_alpha = 0.05;           ///< weak-coupling precondition for the excitation oracle
  double rho11_tol = 1e-3;           ///< max |d rho11|
  double rho10_tol = 2e-3;           ///< max |d |rho10||
  double kernel_rel_tol = 1e-6;      ///< kernel mode, relative
  int kernel_times = 6;              ///< kernel mode, evenly spaced in (0, t_final]
};

int run_simulate(const std::string& config_path, const std::string& output_path,
                 const Overrides& overrides, std::ostream& out, std::ostream& err);

int run_sweep(const std::string& config_path, const SweepOptions& sweep,
              const std::string& output_dir, const Overrides& overrides, std::ostream& out,
              std::ostream& err);

int run_oracle_compare(const std::string& config_path, const std::string& output_path,
                       const OracleOptions& oracle, const Overrides& overrides, std::ostream& out,
                       std::ostream& err);

/// Parses argv and dispatches to the subcommands above.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace ddtcl::cli
