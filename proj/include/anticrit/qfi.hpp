#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "anticrit/fock.hpp"
#include "anticrit/models.hpp"
#include "anticrit/spectral.hpp"
#include "anticrit/tolerances.hpp"

namespace anticrit::qfi {

enum class Method { analytic, spectral_sum, state_fd, adiabatic_generator, phase_imprint };

std::string_view method_name(Method m) noexcept;

struct QfiResult {
  double value = 0.0;
  Method method = Method::analytic;
  // Tolerances applied and intermediate quantities, keyed by name.
  std::map<std::string, double> diagnostics;
};

// d xi / d omega at fixed (g, Omega), for xi = -1/4 ln(1 -/+ x).
double squeezing_derivative(Sector sector, double omega, double x);

// x^2 / (8 omega^2 (1 -/+ x)^2), cross-checked against 2 (d xi/d omega)^2.
QfiResult analytic_squeezed(Sector sector, double omega, double x);

// 4 sum_{n>0} |<n|dH/domega|0>|^2 / (E_n - E_0)^2.
QfiResult spectral_sum(const models::ModelInstance& model);
// Individual summands, index n = 1 .. dim-1 stored at position n - 1.
std::vector<double> spectral_sum_terms(const models::ModelInstance& model);

// Pure-state formula 4(<d psi|d psi> - |<d psi|psi>|^2) with |d psi> from
// central differences of gauge-fixed ground states at omega +/- d_omega.
// A second evaluation at d_omega/2 must agree to tol.richardson_rel.
QfiResult state_fd(const models::ModelSpec& spec, std::optional<double> d_omega = std::nullopt,
                   const Tolerances& tol = {});

// Core of state_fd: neighbours are rotated so <center|neighbour> is real
// positive before differencing.
double qfi_from_neighbor_states(const QuantumState& minus, const QuantumState& center,
                                const QuantumState& plus, double d_omega);

// 4 t^2 Var(n_op) for a phase imprinted by exp(-i omega t n_op).
QfiResult phase_imprint(const QuantumState& state, const HermitianOperator& n_op, double t);

// 4 t^2 Var(c^dag c) (d/d omega of the effective frequency)^2.
QfiResult oscillator_evolution(double var_c, double t, Sector sector, double omega, double x);

enum class Schedule { linear, constant };

// Ramp of x = g^2/g_c^2 from x_start to x_end over total time T (units 1/omega).
struct RampSpec {
  double x_start = 0.0;
  double x_end = 0.0;
  double T = 1.0;
  int steps = 1001;
  Schedule schedule = Schedule::linear;

  void validate() const;
  double x_at(double t) const;
};

// 4 Var(G) of the adiabatic generator,
//   Var(G) = sum_{n>0} | int_0^T exp(i[theta_0 - theta_n]) <psi_0|dH|psi_n> dt |^2,
// with theta_n the dynamical phase and composite trapezoid quadrature over
// ramp.steps nodes. Instantaneous eigenvectors are kept real and sign-continuous
// along the ramp. The base spec supplies omega, Omega, N and n_max; its g is
// replaced by the ramp.
QfiResult adiabatic_generator(const models::ModelSpec& base, const RampSpec& ramp,
                              const Tolerances& tol = {});

struct NormalizedMetrics {
  double qfi_times_gap;
  double qfi_times_gap_sq;
};

NormalizedMetrics normalized_metrics(double qfi, double gap);

}  // namespace anticrit::qfi
