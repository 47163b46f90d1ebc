#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "anticrit/config.hpp"
#include "anticrit/errors.hpp"
#include "anticrit/format.hpp"
#include "anticrit/models.hpp"
#include "anticrit/qfi.hpp"
#include "anticrit/spectral.hpp"
#include "anticrit/sweep.hpp"

namespace anticrit::cli {

namespace {

using models::Family;
using models::ModelSpec;

// Flags shared by the single-evaluation subcommands. Unset options stay
// nullopt so config values show through.
struct ModelFlags {
  std::string family = "effective_low";
  std::optional<double> omega, Omega, g, x;
  std::optional<int> N, n_max;
};

void add_model_flags(CLI::App* cmd, ModelFlags& f) {
  cmd->add_option("--family", f.family,
                  "rabi_full | effective_low | effective_high | lmg | tfim | tfim_transverse");
  cmd->add_option("--omega", f.omega, "oscillator / spin frequency (default 1)");
  cmd->add_option("--Omega", f.Omega, "qubit splitting (default omega_ratio * omega)");
  cmd->add_option("--g", f.g, "coupling");
  cmd->add_option("--x", f.x, "coupling ratio g^2/g_c^2 (bosonic) instead of --g");
  cmd->add_option("--N", f.N, "spin count");
  cmd->add_option("--n-max", f.n_max, "starting Fock cutoff");
}

ModelSpec make_spec(const ModelFlags& f, const Settings& s) {
  if (f.g && f.x) throw std::invalid_argument("--g and --x are mutually exclusive");
  ModelSpec spec;
  spec.family = models::parse_family(f.family);
  spec.omega = f.omega.value_or(s.omega);
  if (!(spec.omega > 0.0) || !std::isfinite(spec.omega)) {
    throw std::invalid_argument("--omega must be positive and finite");
  }
  if (models::is_bosonic(spec.family)) {
    if (f.N) throw std::invalid_argument("--N applies to spin families only");
    spec.Omega = f.Omega.value_or(s.omega_ratio * spec.omega);
    spec.n_max = f.n_max.value_or(s.tol.n_max_default);
    spec.N = 0;
  } else {
    if (f.Omega || f.n_max) {
      throw std::invalid_argument("--Omega and --n-max apply to bosonic families only");
    }
    spec.N = f.N.value_or(spec.family == Family::lmg ? s.lmg_N : s.chain_N);
  }
  spec.g = f.g.value_or(0.0);
  if (f.x) spec = spec.with_coupling_ratio(*f.x);
  return spec;
}

void print_diagnostics(std::ostream& out, const std::map<std::string, double>& diag) {
  for (const auto& [key, value] : diag) out << key << '=' << format_double(value) << '\n';
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw std::invalid_argument("empty entry in list '" + text + "'");
    parts.push_back(item);
  }
  return parts;
}

std::vector<int> parse_levels(const std::string& text) {
  std::vector<int> levels;
  for (const std::string& item : split_list(text)) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || item.empty()) {
      throw std::invalid_argument("--levels: not an integer: '" + item + "'");
    }
    levels.push_back(v);
  }
  return levels;
}

void add_model_context(std::map<std::string, double>& diag, const ModelSpec& spec) {
  diag["omega"] = spec.omega;
  diag["g"] = spec.g;
  diag["x"] = spec.x();
  if (models::is_bosonic(spec.family)) {
    diag["Omega"] = spec.Omega;
  } else {
    diag["N"] = spec.N;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum Fisher information near and away from critical points", "anticrit"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::string config_path;
  bool verbose = false;

  // qfi
  ModelFlags qfi_flags;
  std::string qfi_method = "spectral_sum";
  std::optional<double> qfi_t, qfi_var_c, qfi_d_omega;
  auto* qfi_cmd = app.add_subcommand("qfi", "Quantum Fisher information for omega");
  add_model_flags(qfi_cmd, qfi_flags);
  qfi_cmd->add_option("--method", qfi_method,
                      "analytic | spectral_sum | state_fd | phase_imprint | oscillator");
  qfi_cmd->add_option("--t", qfi_t, "imprint or evolution time (phase_imprint, oscillator)");
  qfi_cmd->add_option("--var-c", qfi_var_c, "Var(c^dag c) of the probe (oscillator)");
  qfi_cmd->add_option("--d-omega", qfi_d_omega, "finite-difference step (state_fd)");

  // gap
  ModelFlags gap_flags;
  auto* gap_cmd = app.add_subcommand("gap", "Energy gap above the ground state");
  add_model_flags(gap_cmd, gap_flags);

  // sweep
  std::string sweep_family = "effective";
  std::optional<std::string> sweep_grid, sweep_columns;
  std::string sweep_out;
  std::optional<int> sweep_jobs, sweep_N, sweep_n_max;
  std::optional<double> sweep_omega, sweep_Omega;
  std::optional<bool> sweep_fd;
  auto* sweep_cmd = app.add_subcommand("sweep", "Parameter sweep written as CSV plus JSON sidecar");
  sweep_cmd->add_option("--family", sweep_family, "effective | lmg | tfim | tfim_transverse");
  sweep_cmd->add_option("--grid", sweep_grid, "start:stop:count");
  sweep_cmd->add_option("--out", sweep_out, "CSV path; metadata goes to PATH.meta.json")
      ->required();
  sweep_cmd->add_option("--jobs", sweep_jobs, "worker threads (0 = all available)");
  sweep_cmd->add_option("--N", sweep_N, "spin count");
  sweep_cmd->add_option("--n-max", sweep_n_max, "starting Fock cutoff");
  sweep_cmd->add_option("--omega", sweep_omega, "frequency (default 1)");
  sweep_cmd->add_option("--Omega", sweep_Omega, "qubit splitting for the effective family");
  sweep_cmd->add_option("--columns", sweep_columns, "comma-separated column subset");
  sweep_cmd->add_flag("--fd,!--no-fd", sweep_fd, "evaluate the finite-difference QFI column");

  // adiabatic
  ModelFlags ad_flags;
  double ad_x_start = 0.0, ad_x_end = 0.0, ad_T = 1.0;
  std::optional<int> ad_steps;
  std::string ad_schedule = "linear";
  auto* ad_cmd = app.add_subcommand("adiabatic", "QFI of an adiabatic ramp of the coupling ratio");
  add_model_flags(ad_cmd, ad_flags);
  ad_cmd->add_option("--x-start", ad_x_start, "coupling ratio at t = 0");
  ad_cmd->add_option("--x-end", ad_x_end, "coupling ratio at t = T");
  ad_cmd->add_option("--T", ad_T, "ramp duration in units of 1/omega");
  ad_cmd->add_option("--steps", ad_steps, "quadrature nodes");
  ad_cmd->add_option("--schedule", ad_schedule, "linear | constant");

  // converge
  ModelFlags conv_flags;
  std::string conv_levels = "50,100,200,400";
  auto* conv_cmd = app.add_subcommand("converge", "Fock-cutoff convergence report");
  add_model_flags(conv_cmd, conv_flags);
  conv_cmd->add_option("--levels", conv_levels, "increasing Fock cutoffs, comma separated");

  auto* version_cmd = app.add_subcommand("version", "Print the version");
  auto* template_cmd = app.add_subcommand("config-template", "Print a commented config file");

  for (CLI::App* cmd : {qfi_cmd, gap_cmd, sweep_cmd, ad_cmd, conv_cmd, template_cmd}) {
    cmd->add_option("--config", config_path, "key = value configuration file");
  }
  for (CLI::App* cmd : {qfi_cmd, gap_cmd, ad_cmd, conv_cmd}) {
    cmd->add_flag("--verbose", verbose, "append key=value diagnostics");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  try {
    const Settings settings = config_path.empty() ? Settings{} : load_config(config_path);

    if (*version_cmd) {
      out << "anticrit " << ANTICRIT_VERSION << '\n';
      return kExitOk;
    }
    if (*template_cmd) {
      out << emit_config(settings);
      return kExitOk;
    }

    if (*qfi_cmd) {
      const ModelSpec spec = make_spec(qfi_flags, settings);
      qfi::QfiResult result;
      if (qfi_method == "analytic") {
        if (!models::is_bosonic(spec.family) || spec.family == Family::rabi_full) {
          throw std::invalid_argument("analytic QFI needs effective_low or effective_high");
        }
        result = qfi::analytic_squeezed(spec.sector(), spec.omega, spec.x());
      } else if (qfi_method == "spectral_sum") {
        result = qfi::spectral_sum(models::build(spec, settings.tol));
      } else if (qfi_method == "state_fd") {
        result = qfi::state_fd(spec, qfi_d_omega, settings.tol);
      } else if (qfi_method == "phase_imprint") {
        const models::ModelInstance model = models::build(spec, settings.tol);
        result = qfi::phase_imprint(model.spectrum().ground_state(), model.dH_domega(),
                                    qfi_t.value_or(1.0));
      } else if (qfi_method == "oscillator") {
        if (!qfi_var_c) throw std::invalid_argument("--method oscillator needs --var-c");
        if (!models::is_bosonic(spec.family) || spec.family == Family::rabi_full) {
          throw std::invalid_argument("oscillator QFI needs effective_low or effective_high");
        }
        result = qfi::oscillator_evolution(*qfi_var_c, qfi_t.value_or(1.0), spec.sector(),
                                           spec.omega, spec.x());
      } else {
        throw std::invalid_argument("unknown --method '" + qfi_method + "'");
      }
      out << format_double(result.value) << '\n';
      if (verbose) {
        auto diag = result.diagnostics;
        add_model_context(diag, spec);
        out << "method=" << qfi::method_name(result.method) << '\n';
        print_diagnostics(out, diag);
      }
      return kExitOk;
    }

    if (*gap_cmd) {
      const ModelSpec spec = make_spec(gap_flags, settings);
      const models::ModelInstance model = models::build(spec, settings.tol);
      const SpectralDecomposition& spectrum = model.spectrum();
      out << format_double(energy_gap(spectrum)) << '\n';
      if (verbose) {
        std::map<std::string, double> diag;
        add_model_context(diag, spec);
        diag["ground_energy"] = spectrum.eigenvalues(0);
        diag["dim"] = static_cast<double>(spectrum.eigenvalues.size());
        if (spectrum.eigenvalues.size() > 2) {
          diag["gap02"] = spectrum.eigenvalues(2) - spectrum.eigenvalues(0);
        }
        if (models::is_bosonic(spec.family)) {
          diag["n_max"] = model.spec().n_max;
          diag["top_population"] = models::ground_top_population(model);
        }
        print_diagnostics(out, diag);
      }
      return kExitOk;
    }

    if (*sweep_cmd) {
      sweep::SweepConfig config = sweep::SweepConfig::defaults(sweep::parse_sweep_family(sweep_family));
      config.tol = settings.tol;
      config.omega = sweep_omega.value_or(settings.omega);
      config.omega_ratio = sweep_Omega ? *sweep_Omega / config.omega : settings.omega_ratio;
      config.n_max = sweep_n_max.value_or(settings.tol.n_max_default);
      config.jobs = sweep_jobs.value_or(settings.jobs);
      switch (config.family) {
        case sweep::SweepFamily::effective:
          config.grid = sweep::Grid::parse(sweep_grid.value_or(settings.grid_effective));
          config.N = 0;
          break;
        case sweep::SweepFamily::lmg:
          config.grid = sweep::Grid::parse(sweep_grid.value_or(settings.grid_lmg));
          config.N = sweep_N.value_or(settings.lmg_N);
          break;
        case sweep::SweepFamily::tfim:
        case sweep::SweepFamily::tfim_transverse:
          config.grid = sweep::Grid::parse(sweep_grid.value_or(settings.grid_chain));
          config.N = sweep_N.value_or(settings.chain_N);
          config.with_fd = settings.fd_chains;
          break;
      }
      if (sweep_fd) config.with_fd = *sweep_fd;
      if (sweep_columns) {
        const std::vector<std::string> known = sweep::default_columns(config.family);
        config.columns = split_list(*sweep_columns);
        for (const std::string& c : config.columns) {
          if (std::find(known.begin(), known.end(), c) == known.end()) {
            throw std::invalid_argument("unknown column '" + c + "' for family " +
                                        std::string(sweep_family));
          }
        }
      }
      if (config.jobs < 0) throw std::invalid_argument("--jobs must be >= 0");
      const std::vector<sweep::SweepRow> rows = sweep::run_sweep(config);
      sweep::write_outputs(rows, config, sweep_out);
      std::size_t flagged = 0;
      for (const auto& r : rows) flagged += r.status != "ok";
      out << "rows=" << rows.size() << '\n';
      out << "flagged=" << flagged << '\n';
      out << "csv=" << sweep_out << '\n';
      out << "meta=" << sweep_out << ".meta.json\n";
      return kExitOk;
    }

    if (*ad_cmd) {
      if (ad_flags.g || ad_flags.x) {
        throw std::invalid_argument("adiabatic takes --x-start/--x-end, not --g or --x");
      }
      const ModelSpec base = make_spec(ad_flags, settings);
      qfi::RampSpec ramp;
      ramp.x_start = ad_x_start;
      ramp.x_end = ad_x_end;
      ramp.T = ad_T;
      ramp.steps = ad_steps.value_or(settings.adiabatic_steps);
      if (ad_schedule == "linear") {
        ramp.schedule = qfi::Schedule::linear;
      } else if (ad_schedule == "constant") {
        ramp.schedule = qfi::Schedule::constant;
      } else {
        throw std::invalid_argument("unknown --schedule '" + ad_schedule + "'");
      }
      const qfi::QfiResult result = qfi::adiabatic_generator(base, ramp, settings.tol);
      out << format_double(result.value) << '\n';
      if (verbose) {
        out << "method=" << qfi::method_name(result.method) << '\n';
        print_diagnostics(out, result.diagnostics);
      }
      return kExitOk;
    }

    if (*conv_cmd) {
      const ModelSpec spec = make_spec(conv_flags, settings);
      const sweep::ConvergenceReport report =
          sweep::convergence_report(spec, parse_levels(conv_levels), settings.tol);
      out << "n_max,ground_energy,gap,mean_n,converged\n";
      for (const auto& r : report.rows) {
        out << r.n_max << ',' << format_double(r.ground_energy) << ',' << format_double(r.gap)
            << ',' << format_double(r.mean_n) << ',' << (r.converged ? "true" : "false") << '\n';
      }
      if (verbose) {
        out << "first_converged="
            << (report.first_converged ? std::to_string(*report.first_converged) : "none")
            << '\n';
      }
      return kExitOk;
    }
  } catch (const GuardError& e) {
    err << "error: " << e.what() << '\n';
    return is_numerical(e.kind()) ? kExitGuard : kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  err << "error: no subcommand\n";
  return kExitUsage;
}

}  // namespace anticrit::cli
