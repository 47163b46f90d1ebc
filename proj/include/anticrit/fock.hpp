#pragma once

#include <Eigen/Dense>

#include "anticrit/spectral.hpp"
#include "anticrit/tolerances.hpp"

namespace anticrit {

// Spin-down (gap closing, critical) or spin-up (gap opening, anti-critical)
// sector of the effective Rabi description.
enum class Sector { low, high };

const char* sector_name(Sector s) noexcept;

namespace fock {

// Single bosonic mode truncated at n_max (dimension n_max + 1).
struct FockSpace {
  explicit FockSpace(int n_max);

  int n_max;
  std::size_t dim() const { return static_cast<std::size_t>(n_max) + 1; }
  Basis basis() const { return Basis::fock(n_max); }
};

struct LadderPair {
  Eigen::MatrixXcd a;      // <n-1|a|n> = sqrt(n)
  Eigen::MatrixXcd a_dag;  // a.adjoint()
};

LadderPair annihilation(const FockSpace& space);
HermitianOperator number_operator(const FockSpace& space);
// a + a^dagger
HermitianOperator position_quadrature(const FockSpace& space);

// xi = -1/4 ln(1 - x) in the low sector, -1/4 ln(1 + x) in the high sector,
// with x = g^2 / g_c^2.
struct SqueezingParameters {
  Sector sector;
  double xi;
  double x;
};

SqueezingParameters squeezing_parameter(Sector sector, double x);

// exp[(xi/2)(a^dag^2 - a^2)] |0>, exponentiated through the spectrum of the
// Hermitian matrix i (xi/2)(a^dag^2 - a^2). Throws TruncationGuard when the
// top two levels hold more than tol.truncation_population.
QuantumState squeeze_vacuum(double xi, const FockSpace& space, const Tolerances& tol = {});

// Same state, starting at tol.n_max_default and doubling n_max up to
// tol.n_max_cap until the truncation guard passes.
QuantumState squeeze_vacuum_auto(double xi, const Tolerances& tol = {});

struct MeanExcitations {
  double exact;          // sinh^2 xi
  double near_critical;  // 1/(4 sqrt(1-x)) (low) or sqrt(x)/4 (high)
};

MeanExcitations mean_excitations(const SqueezingParameters& params);

// Population of levels n_max - 1 and n_max.
double top_population(const QuantumState& state);

}  // namespace fock
}  // namespace anticrit
