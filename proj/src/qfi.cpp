#include "anticrit/qfi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "anticrit/errors.hpp"

namespace anticrit::qfi {

std::string_view method_name(Method m) noexcept {
  switch (m) {
    case Method::analytic: return "analytic";
    case Method::spectral_sum: return "spectral_sum";
    case Method::state_fd: return "state_fd";
    case Method::adiabatic_generator: return "adiabatic_generator";
    case Method::phase_imprint: return "phase_imprint";
  }
  return "unknown";
}

namespace {

void check_ratio(Sector sector, double omega, double x) {
  if (!(omega > 0.0)) throw std::invalid_argument("omega must be > 0");
  if (!std::isfinite(x) || x < 0.0) throw std::invalid_argument("x must be finite and >= 0");
  if (sector == Sector::low && x >= 1.0) {
    throw CriticalPointGuard("low sector needs x < 1, got " + std::to_string(x), x);
  }
}

}  // namespace

double squeezing_derivative(Sector sector, double omega, double x) {
  check_ratio(sector, omega, x);
  // x = g^2 / (omega Omega) so d x / d omega = -x / omega
  return sector == Sector::low ? -x / (4.0 * omega * (1.0 - x))
                               : x / (4.0 * omega * (1.0 + x));
}

QfiResult analytic_squeezed(Sector sector, double omega, double x) {
  check_ratio(sector, omega, x);
  const double s = sector == Sector::low ? 1.0 - x : 1.0 + x;
  const double value = x * x / (8.0 * omega * omega * s * s);
  const double dxi = squeezing_derivative(sector, omega, x);
  const double via_xi = 2.0 * dxi * dxi;
  const double residual = std::abs(value - via_xi);
  if (residual > 1e-12 * std::max(1.0, value)) {
    throw std::logic_error("closed-form QFI disagrees with 2 (d xi/d omega)^2 by " +
                           std::to_string(residual));
  }
  return {value, Method::analytic, {{"identity_residual", residual}, {"x", x}, {"omega", omega}}};
}

std::vector<double> spectral_sum_terms(const models::ModelInstance& model) {
  const SpectralDecomposition& sp = model.spectrum();
  const double gap = energy_gap(sp);
  const double min_gap = model.tolerances().degeneracy_gap;
  if (!(gap > min_gap)) {
    throw DegeneracyGuard("ground state degenerate: E1 - E0 = " + std::to_string(gap) +
                              " <= " + std::to_string(min_gap),
                          gap);
  }
  const Eigen::VectorXcd response = model.dH_domega().apply(sp.eigenvectors.col(0));
  const Eigen::VectorXcd m = sp.eigenvectors.adjoint() * response;
  const double e0 = sp.eigenvalues[0];
  std::vector<double> terms(sp.dim() - 1);
  for (std::size_t n = 1; n < sp.dim(); ++n) {
    const double de = sp.eigenvalues[static_cast<Eigen::Index>(n)] - e0;
    terms[n - 1] = 4.0 * std::norm(m[static_cast<Eigen::Index>(n)]) / (de * de);
  }
  return terms;
}

QfiResult spectral_sum(const models::ModelInstance& model) {
  const std::vector<double> terms = spectral_sum_terms(model);
  double total = 0.0;
  for (double t : terms) total += t;

  std::size_t dominant = 0;
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (terms[i] > terms[dominant]) dominant = i;
  }
  double retained = 0.0;
  for (double t : terms) {
    if (t > 1e-16 * total) retained += 1.0;
  }

  QfiResult r{total, Method::spectral_sum, {}};
  r.diagnostics["gap01"] = energy_gap(model.spectrum());
  r.diagnostics["terms_retained"] = retained;
  r.diagnostics["dominant_level"] = static_cast<double>(dominant + 1);
  r.diagnostics["dominant_fraction"] = total > 0.0 ? terms[dominant] / total : 0.0;
  r.diagnostics["degeneracy_tol"] = model.tolerances().degeneracy_gap;
  r.diagnostics["dim"] = static_cast<double>(model.spectrum().dim());
  if (models::is_bosonic(model.spec().family)) {
    r.diagnostics["n_max"] = model.spec().n_max;
  }
  return r;
}

double qfi_from_neighbor_states(const QuantumState& minus, const QuantumState& center,
                                const QuantumState& plus, double d_omega) {
  if (!(d_omega > 0.0)) throw std::invalid_argument("d_omega must be > 0");
  auto gauge = [&](const QuantumState& s) -> Eigen::VectorXcd {
    const cplx o = overlap(center, s);
    if (std::abs(o) == 0.0) throw std::runtime_error("neighbouring ground states orthogonal");
    return s.amplitudes() * (std::conj(o) / std::abs(o));
  };
  const Eigen::VectorXcd d_psi = (gauge(plus) - gauge(minus)) / (2.0 * d_omega);
  const cplx proj = center.amplitudes().dot(d_psi);
  return 4.0 * (d_psi.squaredNorm() - std::norm(proj));
}

QfiResult state_fd(const models::ModelSpec& spec, std::optional<double> d_omega,
                   const Tolerances& tol) {
  const double step = d_omega.value_or(tol.fd_step_rel * spec.omega);
  if (!(step > 0.0) || step >= spec.omega) {
    throw std::invalid_argument("finite-difference step must lie in (0, omega)");
  }

  const models::ModelInstance center = models::build(spec, tol);
  // neighbours share the centre's (possibly escalated) cutoff
  const models::ModelSpec fixed = center.spec();

  auto ground = [&](const models::ModelInstance& m) {
    const double gap = energy_gap(m.spectrum());
    if (!(gap > tol.degeneracy_gap)) {
      throw DegeneracyGuard("ground state degenerate at omega = " +
                                std::to_string(m.spec().omega) + ": gap " +
                                std::to_string(gap),
                            gap);
    }
    return m.spectrum().ground_state();
  };
  auto ground_at = [&](double omega) {
    return ground(models::build(fixed.with_omega(omega), tol, models::Truncation::fixed));
  };

  const QuantumState psi = ground(center);
  const double full = qfi_from_neighbor_states(ground_at(spec.omega - step), psi,
                                               ground_at(spec.omega + step), step);
  const double half = qfi_from_neighbor_states(ground_at(spec.omega - 0.5 * step), psi,
                                               ground_at(spec.omega + 0.5 * step), 0.5 * step);
  const double shift = std::abs(full - half);
  const double allowed = tol.richardson_rel * std::max(std::abs(full), std::abs(half)) +
                         tol.richardson_abs;
  if (shift > allowed) {
    throw StepGuard("halving d_omega moved the QFI from " + std::to_string(full) + " to " +
                        std::to_string(half),
                    shift);
  }

  QfiResult r{full, Method::state_fd, {}};
  r.diagnostics["fd_step"] = step;
  r.diagnostics["value_half_step"] = half;
  r.diagnostics["richardson_shift"] = shift;
  r.diagnostics["richardson_tol"] = tol.richardson_rel;
  r.diagnostics["gap01"] = energy_gap(center.spectrum());
  if (models::is_bosonic(spec.family)) r.diagnostics["n_max"] = fixed.n_max;
  return r;
}

QfiResult phase_imprint(const QuantumState& state, const HermitianOperator& n_op, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("evolution time t must be >= 0");
  const double var = std::max(0.0, variance(n_op, state));
  return {4.0 * t * t * var, Method::phase_imprint, {{"t", t}, {"variance", var}}};
}

QfiResult oscillator_evolution(double var_c, double t, Sector sector, double omega, double x) {
  if (!(var_c >= 0.0)) throw std::invalid_argument("variance of c^dag c must be >= 0");
  if (!(t >= 0.0)) throw std::invalid_argument("evolution time t must be >= 0");
  check_ratio(sector, omega, x);
  const double factor = models::frequency_derivative_factor(sector, x);
  return {4.0 * t * t * var_c * factor,
          Method::analytic,
          {{"t", t}, {"var_c", var_c}, {"frequency_derivative_factor", factor}}};
}

NormalizedMetrics normalized_metrics(double qfi, double gap) {
  if (!(gap > 0.0)) {
    throw GapGuard("normalization needs a positive gap, got " + std::to_string(gap), gap);
  }
  if (!(qfi >= 0.0)) throw std::invalid_argument("QFI must be >= 0");
  return {qfi * gap, qfi * gap * gap};
}

}  // namespace anticrit::qfi
