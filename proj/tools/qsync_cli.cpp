// qsync_cli: steady states, measures, sweeps, correlations, and the deep-quantum tables.
//
// Exit status: 0 success, 1 bad flags / unreadable input, 2 computed but not converged.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsync/ansatz.hpp"
#include "qsync/density_io.hpp"
#include "qsync/error.hpp"
#include "qsync/experiments.hpp"
#include "qsync/format.hpp"
#include "qsync/grid.hpp"
#include "qsync/measures.hpp"
#include "qsync/steady_state.hpp"
#include "qsync/table_io.hpp"
#include "qsync/wigner.hpp"

namespace {

using namespace qsync;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kUnconverged = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string flag_of(std::string field) {
  for (auto& c : field)
    if (c == '_') c = '-';
  return "--" + field;
}

// Oscillator flags. Each remembers its option so that only flags actually
// given override a config file.
struct ParamFlags {
  OscillatorParams values;
  std::vector<std::pair<std::string, CLI::Option*>> options;

  void attach(CLI::App& app) {
    add(app, "delta", values.delta, "detuning");
    add(app, "drive", values.drive, "coherent drive strength E");
    add(app, "eta", values.eta, "squeezing strength");
    add(app, "phi", values.phi, "squeezing phase in [0, 2pi)");
    add(app, "gamma1", values.gamma1, "linear gain rate (> 0)");
    add(app, "gamma2", values.gamma2, "two-photon loss rate");
    add(app, "gamma3", values.gamma3, "linear loss rate");
    add(app, "white_noise", values.white_noise, "white-noise fraction p in [0, 1]");
    options.emplace_back("fock_dim", app.add_option("--fock-dim", values.fock_dim,
                                                    "Fock truncation (0 = automatic)")
                                         ->capture_default_str());
  }

  void add(CLI::App& app, const std::string& name, double& target, const std::string& help) {
    options.emplace_back(name, app.add_option(flag_of(name), target, help)->capture_default_str());
  }

  /// Copies explicitly given flags onto `base`.
  void override(OscillatorParams& base) const {
    for (const auto& [name, opt] : options) {
      if (opt->count() == 0) continue;
      if (name == "fock_dim") {
        base.fock_dim = values.fock_dim;
      } else {
        set_param(base, name, get_param(values, name));
      }
    }
  }
};

void validate_params(const OscillatorParams& p) {
  try {
    p.validate();
  } catch (const DomainError& e) {
    std::string msg = e.what();
    const auto space = msg.find(' ');
    const std::string field = msg.substr(0, space);
    if (field == "fock_dim" || is_param_name(field)) msg = flag_of(field) + msg.substr(space);
    throw UsageError(msg);
  }
}

struct SolverFlags {
  SolverOptions values;
  std::vector<CLI::Option*> options;

  void attach(CLI::App& app) {
    options.push_back(app.add_option("--residual-tol", values.residual_tol, "steady-state residual tolerance")
                          ->capture_default_str());
    options.push_back(app.add_option("--truncation-tol", values.truncation_tol,
                                     "allowed population of the top two Fock levels")
                          ->capture_default_str());
    options.push_back(app.add_option("--psd-tol", values.psd_tol, "allowed negative eigenvalue magnitude")
                          ->capture_default_str());
  }

  void override(SolverOptions& base) const {
    if (options[0]->count()) base.residual_tol = values.residual_tol;
    if (options[1]->count()) base.truncation_tol = values.truncation_tol;
    if (options[2]->count()) base.psd_tol = values.psd_tol;
  }

  void validate() const {
    if (!(values.residual_tol > 0.0)) throw UsageError("--residual-tol must be positive");
    if (!(values.truncation_tol > 0.0)) throw UsageError("--truncation-tol must be positive");
    if (!(values.psd_tol >= 0.0)) throw UsageError("--psd-tol must be nonnegative");
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Runs `body` with stdout or the file at `path`.
template <typename F>
void with_output(const std::string& path, F&& body) {
  if (path.empty() || path == "-") {
    body(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  body(out);
  if (!out) throw Error("failed writing " + path);
}

Axis parse_axis(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 4 && parts.size() != 5) {
    throw UsageError("--axis expects name:min:max:points[:log], got '" + text + "'");
  }
  Axis axis;
  axis.parameter = parts[0];
  try {
    std::size_t used = 0;
    axis.min = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("min");
    axis.max = std::stod(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("max");
    axis.points = std::stoi(parts[3], &used);
    if (used != parts[3].size()) throw std::invalid_argument("points");
  } catch (const std::exception&) {
    throw UsageError("--axis has a malformed number in '" + text + "'");
  }
  if (parts.size() == 5) {
    if (parts[4] == "log") {
      axis.spacing = Spacing::log;
    } else if (parts[4] != "linear") {
      throw UsageError("--axis spacing must be 'linear' or 'log', got '" + parts[4] + "'");
    }
  }
  return axis;
}

std::vector<Measure> parse_measures(const std::string& text) {
  std::vector<Measure> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      out.push_back(measure_from_name(item));
    } catch (const DomainError& e) {
      throw UsageError(std::string("--measures: ") + e.what());
    }
  }
  if (out.empty()) throw UsageError("--measures must name at least one measure");
  return out;
}

nlohmann::json measures_json(const MeasureSet& m) {
  return {{"s_pcoh", m.s_pcoh},
          {"s_pcoh_phase", std::arg(m.s_pcoh_complex)},
          {"s_pcoh_undefined", m.s_pcoh_undefined},
          {"s_peak", m.s_peak},
          {"mrl1", m.mrl1},
          {"mrl2", m.mrl2},
          {"qfi", m.qfi},
          {"cfi", m.cfi},
          {"cfi_regularized", m.cfi_regularized}};
}

// Solves the steady state and applies white noise; shared by steady, phase-dist and wigner.
struct Solved {
  SteadyStateReport report;
  DensityMatrix rho;
};

Solved solve(const ParamFlags& flags, const SolverFlags& solver) {
  OscillatorParams p;
  flags.override(p);
  validate_params(p);
  solver.validate();
  SolverOptions opts;
  solver.override(opts);
  SteadyStateReport rep = solve_steady_state(p, opts);
  DensityMatrix rho = p.white_noise > 0.0 ? apply_white_noise(rep.rho, p.white_noise) : rep.rho;
  return {std::move(rep), std::move(rho)};
}

void warn_unconverged(const SteadyStateReport& rep) {
  if (rep.converged) return;
  std::cerr << "warning: steady state not converged (residual " << format_double(rep.residual)
            << ", top population " << format_double(rep.top_population) << ", min eigenvalue "
            << format_double(rep.min_eigenvalue) << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum van der Pol oscillator: steady states, synchronization measures, and sweeps", "qsync_cli"};
  app.set_version_flag("--version", std::string(QSYNC_VERSION));
  app.require_subcommand(1);

  // steady
  auto* steady = app.add_subcommand("steady", "solve one steady state; write rho as JSON and print measures");
  ParamFlags steady_params;
  SolverFlags steady_solver;
  std::string steady_out = "rho.json";
  int steady_grid = 4096;
  steady_params.attach(*steady);
  steady_solver.attach(*steady);
  steady->add_option("-o,--output", steady_out, "density-matrix JSON path ('-' to skip)")->capture_default_str();
  steady->add_option("--grid-size", steady_grid, "phase-distribution grid points")->capture_default_str();

  // sweep
  auto* sweep = app.add_subcommand("sweep", "run a parameter sweep and write a CSV table plus metadata sidecar");
  ParamFlags sweep_params;
  SolverFlags sweep_solver;
  std::string sweep_config, sweep_out, sweep_measures;
  std::vector<std::string> sweep_axes;
  int workers = 0;
  sweep_params.attach(*sweep);
  sweep_solver.attach(*sweep);
  sweep->add_option("-c,--config", sweep_config, "JSON sweep config; flags override it")->check(CLI::ExistingFile);
  sweep->add_option("--axis", sweep_axes, "axis as name:min:max:points[:log] (at most two)");
  sweep->add_option("--measures", sweep_measures, "comma-separated measures (default: all six)");
  sweep->add_option("-w,--workers", workers, "worker threads (0 = all cores)")
      ->envname("QSYNC_WORKERS")
      ->capture_default_str();
  sweep->add_option("-o,--output", sweep_out, "output CSV path")->required();

  // correlate
  auto* correlate = app.add_subcommand("correlate", "Pearson correlation matrix of sweep-table columns");
  std::string corr_in, corr_out, corr_columns;
  correlate->add_option("-i,--input", corr_in, "sweep CSV")->required()->check(CLI::ExistingFile);
  correlate->add_option("--columns", corr_columns, "comma-separated columns (default: every measure present)");
  correlate->add_option("-o,--output", corr_out, "output CSV path (default: stdout)");

  // ansatz
  auto* ansatz = app.add_subcommand("ansatz", "deep-quantum closed forms over a drive grid");
  double e_min = 0.0, e_max = 0.3;
  int e_points = 31;
  std::string ansatz_out;
  ansatz->add_option("--drive-min", e_min, "first drive value")->capture_default_str();
  ansatz->add_option("--drive-max", e_max, "last drive value")->capture_default_str();
  ansatz->add_option("--points", e_points, "number of drive values")->capture_default_str();
  ansatz->add_option("-o,--output", ansatz_out, "output CSV path (default: stdout)");

  // phase-dist
  auto* phase = app.add_subcommand("phase-dist", "phase distribution P(phi) of a steady state");
  ParamFlags phase_params;
  SolverFlags phase_solver;
  std::string phase_out;
  int phase_grid = 4096;
  phase_params.attach(*phase);
  phase_solver.attach(*phase);
  phase->add_option("--grid-size", phase_grid, "grid points")->capture_default_str();
  phase->add_option("-o,--output", phase_out, "output CSV path (default: stdout)");

  // wigner
  auto* wig = app.add_subcommand("wigner", "Wigner function of a steady state on a square grid");
  ParamFlags wig_params;
  SolverFlags wig_solver;
  std::string wig_out;
  double extent = 4.0;
  int wig_points = 101;
  wig_params.attach(*wig);
  wig_solver.attach(*wig);
  wig->add_option("--extent", extent, "grid covers [-extent, extent] in x and p")->capture_default_str();
  wig->add_option("--points", wig_points, "points per axis")->capture_default_str();
  wig->add_option("-o,--output", wig_out, "output CSV path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*steady) {
      if (steady_grid < 8) throw UsageError("--grid-size must be at least 8");
      const Solved s = solve(steady_params, steady_solver);
      warn_unconverged(s.report);
      MeasureConfig mc;
      mc.grid_size = steady_grid;
      if (steady_out != "-") write_density_matrix(s.rho, steady_out);
      nlohmann::json summary = {{"converged", s.report.converged},
                                {"fock_dim", s.rho.dim()},
                                {"residual", s.report.residual},
                                {"top_population", s.report.top_population},
                                {"min_eigenvalue", s.report.min_eigenvalue},
                                {"measures", measures_json(measure_all(s.rho, mc))}};
      std::cout << summary.dump(2) << '\n';
      return s.report.converged ? kOk : kUnconverged;
    }

    if (*sweep) {
      SweepSpec spec;
      if (!sweep_config.empty()) spec = sweep_spec_from_json(read_file(sweep_config), sweep_config);
      sweep_params.override(spec.base);
      validate_params(spec.base);
      sweep_solver.validate();
      sweep_solver.override(spec.solver);
      if (!sweep_axes.empty()) {
        spec.axes.clear();
        for (const auto& a : sweep_axes) spec.axes.push_back(parse_axis(a));
      }
      if (!sweep_measures.empty()) spec.measures = parse_measures(sweep_measures);
      if (spec.axes.empty()) throw UsageError("--axis is required when the config has no axes");
      if (workers < 0) throw UsageError("--workers must be nonnegative");
      try {
        spec.validate();
      } catch (const DomainError& e) {
        throw UsageError(std::string("--axis: ") + e.what());
      }
      SweepTable table;
      try {
        table = run_sweep(spec, workers);
      } catch (const SweepError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUnconverged;
      }
      write_table(table, sweep_out, spec);
      const auto conv = table.column("converged");
      const auto failed = std::count(conv.begin(), conv.end(), 0.0);
      if (failed > 0) {
        std::cerr << "warning: " << failed << " of " << conv.size() << " grid points did not converge\n";
        return kUnconverged;
      }
      return kOk;
    }

    if (*correlate) {
      const SweepTable table = read_table(corr_in);
      std::vector<std::string> cols;
      if (!corr_columns.empty()) {
        std::stringstream ss(corr_columns);
        for (std::string item; std::getline(ss, item, ',');) cols.push_back(item);
      } else {
        for (Measure m : kAllMeasures) {
          const std::string name(measure_name(m));
          if (std::find(table.columns.begin(), table.columns.end(), name) != table.columns.end()) cols.push_back(name);
        }
      }
      for (const auto& c : cols) {
        if (std::find(table.columns.begin(), table.columns.end(), c) == table.columns.end()) {
          throw UsageError("--columns: table has no column '" + c + "'");
        }
      }
      const CorrelationMatrix cm = correlation_matrix(table, cols);
      with_output(corr_out, [&](std::ostream& out) { write_correlation_csv(cm, out); });
      return kOk;
    }

    if (*ansatz) {
      if (!(e_min >= 0.0)) throw UsageError("--drive-min must be nonnegative");
      if (!(e_max >= e_min)) throw UsageError("--drive-max must be >= --drive-min");
      if (e_points < 1) throw UsageError("--points must be positive");
      if (e_points == 1 && e_max != e_min) throw UsageError("--points 1 needs --drive-min == --drive-max");
      if (e_max > kDeepQuantumValidityLimit) {
        std::cerr << "warning: drive values above " << kDeepQuantumValidityLimit
                  << " are outside the E << 1 range where the closed forms hold\n";
      }
      with_output(ansatz_out, [&](std::ostream& out) {
        out << "E,mrl1,qfi,pcoh,speak,cfi\n";
        for (double e : linspace(e_min, e_max, e_points)) {
          const DeepQuantumLimits l = deep_quantum_limits(e);
          out << format_double(e) << ',' << format_double(l.mrl1) << ',' << format_double(l.qfi) << ','
              << format_double(l.pcoh) << ',' << format_double(l.speak) << ',' << format_double(l.cfi) << '\n';
        }
      });
      return kOk;
    }

    if (*phase) {
      const Solved s = solve(phase_params, phase_solver);
      warn_unconverged(s.report);
      const int min_grid = 4 * s.rho.dim();
      if (phase_grid < min_grid) throw UsageError("--grid-size must be at least " + std::to_string(min_grid));
      const PhaseDistribution pd = phase_distribution(s.rho, phase_grid);
      with_output(phase_out, [&](std::ostream& out) { write_phase_distribution_csv(pd, out); });
      return s.report.converged ? kOk : kUnconverged;
    }

    if (*wig) {
      if (!(extent > 0.0)) throw UsageError("--extent must be positive");
      if (wig_points < 2) throw UsageError("--points must be at least 2");
      const Solved s = solve(wig_params, wig_solver);
      warn_unconverged(s.report);
      const auto axis = linspace(-extent, extent, wig_points);
      const WignerGrid grid = wigner(s.rho, axis, axis);
      with_output(wig_out, [&](std::ostream& out) { write_wigner_csv(grid, out); });
      return s.report.converged ? kOk : kUnconverged;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\nRun with --help for usage.\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
