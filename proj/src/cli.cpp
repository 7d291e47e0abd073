#include "ddtcl/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "ddtcl/config_io.hpp"
#include "ddtcl/kernels.hpp"
#include "ddtcl/oracles.hpp"
#include "ddtcl/propagator.hpp"

namespace ddtcl::cli {

void Overrides::apply(SimConfig& config) const {
  if (substeps) config.numerics.substeps = *substeps;
  if (rel_tol) config.numerics.rel_tol = *rel_tol;
}

namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

SimConfig load(const std::string& path, const Overrides& overrides) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  SimConfig config = parse_config(in);
  overrides.apply(config);
  config.validate();
  return config;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

void close_output(std::ofstream& out, const std::string& path) {
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

// Runs `body`, mapping exceptions to exit codes with a message on `err`.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const ConfigError& e) {
    err << "error: invalid configuration: " << e.what() << '\n';
    return kBadConfig;
  } catch (const NumericalFailure& e) {
    err << "error: numerical failure at t = " << format_number(e.t()) << ": " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

void print_summary(std::ostream& out, const Trajectory& traj) {
  const Sample& last = traj.final();
  out << "t_final      = " << format_number(last.t) << " (" << format_number(to_cycles(last.t))
      << " cycles)\n"
      << "rho11        = " << format_number(last.state.rho11) << '\n'
      << "abs_rho10    = " << format_number(std::abs(last.state.rho10)) << '\n'
      << "pulse_count  = " << last.pulse_count << '\n'
      << "positivity_violations = " << traj.diagnostics.positivity_violations;
  if (traj.diagnostics.first_violation_time) {
    out << " (first at t = " << format_number(*traj.diagnostics.first_violation_time) << ")";
  }
  out << '\n';
}

void write_csv(const std::string& path, const Trajectory& traj) {
  auto file = open_output(path);
  write_trajectory_csv(file, traj);
  close_output(file, path);
}

std::string interval_label(double cycles) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "dt_%g", cycles);
  return buf;
}

}  // namespace

int run_simulate(const std::string& config_path, const std::string& output_path,
                 const Overrides& overrides, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SimConfig config = load(config_path, overrides);
    const Trajectory traj = propagate(config);
    write_csv(output_path, traj);
    print_summary(out, traj);
    if (traj.diagnostics.positivity_violations > 0) {
      err << "warning: state left the physical region at "
          << traj.diagnostics.positivity_violations << " steps\n";
    }
    return int{kOk};
  });
}

int run_sweep(const std::string& config_path, const SweepOptions& sweep,
              const std::string& output_dir, const Overrides& overrides, std::ostream& out,
              std::ostream& err) {
  SimConfig base;
  if (int code = guarded(err, [&] {
        base = load(config_path, overrides);
        return int{kOk};
      });
      code != kOk) {
    return code;
  }
  if (int code = guarded(err, [&] {
        std::error_code ec;
        std::filesystem::create_directories(output_dir, ec);
        if (ec) throw IoError("cannot create directory '" + output_dir + "': " + ec.message());
        return int{kOk};
      });
      code != kOk) {
    return code;
  }

  std::vector<double> intervals;
  for (double v : sweep.intervals_cycles) {
    if (std::find(intervals.begin(), intervals.end(), v) != intervals.end()) {
      err << "warning: duplicate pulse interval " << v << " ignored\n";
      continue;
    }
    intervals.push_back(v);
  }

  struct Run {
    std::string label;
    std::optional<double> cycles;
    int code = kOk;
    Trajectory traj;
  };
  std::vector<Run> runs;
  runs.push_back({"baseline", std::nullopt, kOk, {}});
  for (double v : intervals) runs.push_back({interval_label(v), v, kOk, {}});

  int status = kOk;
  for (auto& run : runs) {
    run.code = guarded(err, [&] {
      SimConfig config = base;
      if (run.cycles) {
        config.pulse_interval = from_cycles(*run.cycles);
      } else {
        config.pulse_interval.reset();
      }
      config.validate();
      run.traj = propagate(config);
      write_csv((std::filesystem::path(output_dir) / (run.label + ".csv")).string(), run.traj);
      return int{kOk};
    });
    if (run.code != kOk) {
      err << "run " << run.label << " failed (exit " << run.code << ")\n";
      if (status == kOk) status = run.code;
    }
    out << run.label << ": " << (run.code == kOk ? "ok" : "FAILED") << '\n';
  }

  const std::string summary_path = (std::filesystem::path(output_dir) / "summary.csv").string();
  const int summary_code = guarded(err, [&] {
    auto file = open_output(summary_path);
    file << "run,dt_cycles,probe_cycles,t,rho11,abs_rho10,status\n";
    for (const auto& run : runs) {
      const std::string dt = run.cycles ? format_number(*run.cycles) : "none";
      if (run.code != kOk) {
        file << run.label << ',' << dt << ",,,,,failed\n";
        continue;
      }
      for (double probe : sweep.probe_cycles) {
        const double t = from_cycles(probe);
        if (t > run.traj.final().t * (1.0 + 1e-12)) continue;
        const QubitState s = run.traj.state_at(t);
        file << run.label << ',' << dt << ',' << format_number(probe) << ',' << format_number(t)
             << ',' << format_number(s.rho11) << ',' << format_number(std::abs(s.rho10))
             << ",ok\n";
      }
    }
    close_output(file, summary_path);
    return int{kOk};
  });
  return status != kOk ? status : summary_code;
}

int run_oracle_compare(const std::string& config_path, const std::string& output_path,
                       const OracleOptions& oracle, const Overrides& overrides, std::ostream& out,
                       std::ostream& err) {
  return guarded(err, [&]() -> int {
    const SimConfig config = load(config_path, overrides);

    if (oracle.mode == OracleMode::kernel) {
      auto file = open_output(output_path);
      file << "t,np,flavor,tcl2_re,tcl2_im,oracle_re,oracle_im,rel_dev\n";
      const auto schedule = config.schedule();
      double worst = 0.0;
      for (int i = 1; i <= oracle.kernel_times; ++i) {
        const double t = config.t_final * i / oracle.kernel_times;
        const auto np = pulse_count(schedule, t);
        const BruteForceKernels brute = brute_force_kernels(config, t);
        const std::pair<const char*, std::pair<Complex, Complex>> rows[] = {
            {"gamma11", {Complex{kernel_gamma11(config, t), 0.0}, brute.get(KernelFlavor::g11)}},
            {"gamma10", {kernel_gamma10(config, t), brute.get(KernelFlavor::g10)}},
            {"eta11", {Complex{kernel_eta11(config, t), 0.0}, brute.get(KernelFlavor::e11)}},
        };
        for (const auto& [name, values] : rows) {
          const auto [tcl, ref] = values;
          const double diff = std::abs(tcl - ref);
          const double dev = diff == 0.0 ? 0.0 : diff / std::max(std::abs(ref), 1e-300);
          worst = std::max(worst, dev);
          file << format_number(t) << ',' << np << ',' << name << ',' << format_number(tcl.real())
               << ',' << format_number(tcl.imag()) << ',' << format_number(ref.real()) << ','
               << format_number(ref.imag()) << ',' << format_number(dev) << '\n';
        }
      }
      close_output(file, output_path);
      out << "max_rel_kernel_deviation = " << format_number(worst) << '\n';
      if (worst > oracle.kernel_rel_tol) {
        err << "kernel deviation exceeds tolerance " << format_number(oracle.kernel_rel_tol) << '\n';
        return kToleranceExceeded;
      }
      return kOk;
    }

    if (config.kT > 0.0) {
      throw ConfigError("the single-excitation oracle needs kT = 0");
    }
    if (config.alpha > oracle.max_alpha) {
      throw ConfigError("the single-excitation oracle needs alpha <= " +
                        format_number(oracle.max_alpha));
    }
    const Trajectory tcl = propagate(config);
    const auto bath = DiscretizedBath::uniform(config.spectral(), oracle.span * config.omega_c,
                                               oracle.modes);
    const Trajectory exact = single_excitation_simulate(config, bath);
    if (tcl.samples.size() != exact.samples.size()) {
      throw std::runtime_error("oracle and TCL2 sample grids differ");
    }

    auto file = open_output(output_path);
    file << "t,t_cycles,np,rho11_tcl2,rho11_exact,abs_rho10_tcl2,abs_rho10_exact,d_rho11,"
            "d_abs_rho10\n";
    double worst11 = 0.0;
    double worst10 = 0.0;
    for (std::size_t i = 0; i < tcl.samples.size(); ++i) {
      const Sample& a = tcl.samples[i];
      const Sample& b = exact.samples[i];
      const double d11 = std::abs(a.state.rho11 - b.state.rho11);
      const double d10 = std::abs(std::abs(a.state.rho10) - std::abs(b.state.rho10));
      worst11 = std::max(worst11, d11);
      worst10 = std::max(worst10, d10);
      file << format_number(a.t) << ',' << format_number(to_cycles(a.t)) << ',' << a.pulse_count
           << ',' << format_number(a.state.rho11) << ',' << format_number(b.state.rho11) << ','
           << format_number(std::abs(a.state.rho10)) << ','
           << format_number(std::abs(b.state.rho10)) << ',' << format_number(d11) << ','
           << format_number(d10) << '\n';
    }
    close_output(file, output_path);
    out << "max_abs_d_rho11     = " << format_number(worst11) << '\n'
        << "max_abs_d_abs_rho10 = " << format_number(worst10) << '\n'
        << "oracle_norm_error   = " << format_number(exact.diagnostics.max_norm_error) << '\n';
    if (worst11 > oracle.rho11_tol || worst10 > oracle.rho10_tol) {
      err << "deviation exceeds tolerance (rho11 " << format_number(oracle.rho11_tol)
          << ", |rho10| " << format_number(oracle.rho10_tol) << ")\n";
      return kToleranceExceeded;
    }
    return kOk;
  });
}

namespace {

std::vector<double> parse_cycle_list(const std::string& text, const char* flag) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty() || item == "none" || item == "off") continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || !(v > 0.0)) {
      throw ConfigError("invalid value '" + item + "' in " + flag);
    }
    values.push_back(v);
  }
  return values;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"TCL2 simulator for a qubit under periodic pi pulses"};
  app.require_subcommand(1);

  Overrides overrides;
  int substeps = 0;
  double tol = 0.0;
  auto* substeps_opt = app.add_option("--substeps", substeps, "RK4 steps per pulse interval")
                           ->check(CLI::PositiveNumber);
  auto* tol_opt = app.add_option("--tol", tol, "relative quadrature tolerance")
                      ->check(CLI::PositiveNumber);

  std::string config_path;
  std::string output;

  auto* simulate = app.add_subcommand("simulate", "propagate one configuration to CSV");
  simulate->add_option("config", config_path, "config file")->required();
  simulate->add_option("-o,--output", output, "trajectory CSV")->required();

  std::string dt_list;
  std::string probes;
  auto* sweep = app.add_subcommand("sweep", "run a no-pulse baseline and a list of pulse intervals");
  sweep->add_option("config", config_path, "config file")->required();
  sweep->add_option("--dt", dt_list, "comma-separated pulse intervals in cycles 2 pi / omega0");
  sweep->add_option("--probe", probes, "comma-separated probe times in cycles (default 0.2,0.5,1.0)");
  sweep->add_option("-o,--output", output, "output directory")->required();

  OracleOptions oracle;
  std::string mode = "excitation";
  auto* compare = app.add_subcommand("oracle-compare", "compare TCL2 against an independent oracle");
  compare->add_option("config", config_path, "config file")->required();
  compare->add_option("-o,--output", output, "comparison CSV")->required();
  compare->add_option("--oracle", mode, "excitation or kernel")
      ->check(CLI::IsMember({"excitation", "kernel"}));
  compare->add_option("--modes", oracle.modes, "bath modes for the excitation oracle")
      ->check(CLI::PositiveNumber);
  compare->add_option("--span", oracle.span, "oracle bath extent in units of omega_c")
      ->check(CLI::PositiveNumber);
  compare->add_option("--rho11-tol", oracle.rho11_tol, "max |d rho11|");
  compare->add_option("--rho10-tol", oracle.rho10_tol, "max |d |rho10||");
  compare->add_option("--kernel-tol", oracle.kernel_rel_tol, "max relative kernel deviation");
  compare->add_option("--kernel-times", oracle.kernel_times, "kernel comparison times")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadConfig;
  }
  if (*substeps_opt) overrides.substeps = substeps;
  if (*tol_opt) overrides.rel_tol = tol;

  if (*simulate) return run_simulate(config_path, output, overrides, out, err);
  if (*sweep) {
    SweepOptions options;
    try {
      options.intervals_cycles = parse_cycle_list(dt_list, "--dt");
      if (!probes.empty()) options.probe_cycles = parse_cycle_list(probes, "--probe");
    } catch (const ConfigError& e) {
      err << "error: " << e.what() << '\n';
      return kBadConfig;
    }
    return run_sweep(config_path, options, output, overrides, out, err);
  }
  oracle.mode = (mode == "kernel") ? OracleMode::kernel : OracleMode::excitation;
  return run_oracle_compare(config_path, output, oracle, overrides, out, err);
}

}  // namespace ddtcl::cli
