#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "anticrit/models.hpp"
#include "anticrit/tolerances.hpp"

namespace anticrit::sweep {

enum class SweepFamily { effective, lmg, tfim, tfim_transverse };

std::string_view sweep_family_name(SweepFamily f) noexcept;
SweepFamily parse_sweep_family(std::string_view name);

// Strictly monotone list of grid coordinates. The coordinate is x_signed for
// the effective sweep (x > 0 low sector, x < 0 high sector with |x|) and
// g/g_c for the spin sweeps.
struct Grid {
  std::vector<double> points;

  // count >= 2 evenly spaced points, both ends included
  static Grid linear(double start, double stop, int count);
  // "start:stop:count"
  static Grid parse(std::string_view text);
  void validate() const;
};

struct SweepConfig {
  SweepFamily family = SweepFamily::effective;
  double omega = 1.0;
  double omega_ratio = 1000.0;  // Omega / omega for the effective description
  int N = 0;                    // spin count (lmg, chains)
  int n_max = 300;              // starting Fock cutoff (effective)
  Grid grid;
  std::vector<std::string> columns;  // empty selects every column of the family
  bool with_fd = true;               // evaluate the state finite-difference QFI
  int jobs = 0;                      // 0 selects std::thread::hardware_concurrency()
  Tolerances tol;

  // Effective x_signed in [-16, 0.95] (200 points); LMG N=200, g/g_c in
  // [0, 0.98] (100 points); chains N=10, g/g_c in [-3, 3] (121 points, no
  // finite-difference column).
  static SweepConfig defaults(SweepFamily family);
};

// One grid point. Cells that could not be evaluated stay empty and the guard
// names are listed in `status` ("ok" when none fired).
struct SweepRow {
  std::optional<double> x_signed, g_over_gc, x, gap01, gap02, qfi_spectral, qfi_analytic,
      qfi_fd, qfi_times_gap, qfi_times_gap_sq, mean_n, mean_sz, mean_sz_plus_half_N, var_sx,
      var_sy, var_sz, xi;
  int n_max = 0;  // Fock cutoff actually used, 0 for spin models
  std::string status = "ok";

  std::optional<double> column(std::string_view name) const;
};

std::vector<std::string> default_columns(SweepFamily family);

std::vector<SweepRow> sweep_effective(const SweepConfig& config);
std::vector<SweepRow> sweep_lmg(const SweepConfig& config);
std::vector<SweepRow> sweep_chain(const SweepConfig& config);
std::vector<SweepRow> run_sweep(const SweepConfig& config);

// Header line of column names, then one line per row; floats in shortest
// round-trip form, unavailable cells empty, status last.
std::string to_csv(const std::vector<SweepRow>& rows, const SweepConfig& config);
// JSON sidecar: config, tolerances, per-row truncation levels, version.
std::string metadata_json(const std::vector<SweepRow>& rows, const SweepConfig& config);
// Writes `path` and `path + ".meta.json"`.
void write_outputs(const std::vector<SweepRow>& rows, const SweepConfig& config,
                   const std::string& path);

struct ConvergenceRow {
  int n_max;
  double ground_energy;
  double gap;
  double mean_n;
  bool converged;  // every quantity within tol.convergence_rel of the previous level
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  std::optional<int> first_converged;  // first level that matches its predecessor
};

// Bosonic families only; `levels` must be strictly increasing, each >= 2.
ConvergenceReport convergence_report(const models::ModelSpec& spec,
                                     const std::vector<int>& levels,
                                     const Tolerances& tol = {});

}  // namespace anticrit::sweep
