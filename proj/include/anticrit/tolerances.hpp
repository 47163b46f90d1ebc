#pragma once

#include <cstddef>

namespace anticrit {

// Every numerical threshold used by the library. Defaults are the values the
// test suites are pinned to; the CLI config file can override each one.
struct Tolerances {
  // spectral
  double hermiticity = 1e-12;     // relative to max |H_jk|
  double norm = 1e-12;            // | ||psi|| - 1 |
  std::size_t max_dim = 1u << 14;
  double degenerate_cluster = 1e-9;  // eigenvalue spacing treated as degenerate

  // fock / models
  double truncation_population = 1e-10;  // top-two-level population bound
  int n_max_default = 300;
  int n_max_cap = 4096;
  double critical_margin = 1e-6;  // low sector requires x < 1 - margin

  // qfi
  double degeneracy_gap = 1e-9;  // spectral sum refuses E1 - E0 below this
  double fd_step_rel = 1e-5;     // d_omega = fd_step_rel * omega
  double richardson_rel = 1e-4;  // max relative shift when halving d_omega
  double richardson_abs = 1e-10; // absolute floor for the same comparison
  double adiabatic_gap = 1e-6;
  double adiabatic_convergence = 1e-3;  // relative shift when halving the node count
  double adiabatic_abs = 1e-10;          // absolute floor for the same comparison
  double berry = 1e-10;

  // sweep
  double convergence_rel = 1e-10;
  double critical_exclusion = 1e-3;  // low-sector grids skip |x - 1| <= this
};

}  // namespace anticrit
