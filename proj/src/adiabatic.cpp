#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "anticrit/errors.hpp"
#include "anticrit/qfi.hpp"

namespace anticrit::qfi {

void RampSpec::validate() const {
  if (!std::isfinite(T) || T < 0.0) throw std::invalid_argument("ramp time T must be >= 0");
  if (steps < 10) throw std::invalid_argument("ramp needs at least 10 steps");
  if (!(x_start >= 0.0) || !(x_end >= 0.0)) {
    throw std::invalid_argument("ramp endpoints must satisfy x >= 0");
  }
  if (schedule == Schedule::constant && x_start != x_end) {
    throw std::invalid_argument("constant schedule requires x_start == x_end");
  }
}

double RampSpec::x_at(double t) const {
  if (schedule == Schedule::constant || T == 0.0) return x_start;
  return x_start + (x_end - x_start) * (t / T);
}

namespace {

struct RampSamples {
  std::vector<double> times;
  Eigen::MatrixXd energies;   // (level, node)
  Eigen::MatrixXcd elements;  // <psi_0(t)|dH|psi_n(t)>, (level, node)
  double min_gap = 0.0;
  double berry_max = 0.0;
};

// Trapezoid evaluation of sum_{n>0} |int exp(i[theta_0 - theta_n]) M_n dt|^2
// on the subset `nodes` of the sampled times.
double generator_variance(const RampSamples& s, const std::vector<Eigen::Index>& nodes) {
  const Eigen::Index levels = s.energies.rows();
  double total = 0.0;
  for (Eigen::Index n = 1; n < levels; ++n) {
    double theta = 0.0;  // theta_0 - theta_n
    cplx integral = 0.0;
    cplx prev_f = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const Eigen::Index j = nodes[k];
      if (k > 0) {
        const Eigen::Index i = nodes[k - 1];
        const double dt = s.times[static_cast<std::size_t>(j)] - s.times[static_cast<std::size_t>(i)];
        theta += 0.5 * dt * ((s.energies(0, i) - s.energies(n, i)) +
                             (s.energies(0, j) - s.energies(n, j)));
        const cplx f = std::exp(cplx(0.0, theta)) * s.elements(n, j);
        integral += 0.5 * dt * (prev_f + f);
        prev_f = f;
      } else {
        prev_f = s.elements(n, j);
      }
    }
    total += std::norm(integral);
  }
  return total;
}

}  // namespace

QfiResult adiabatic_generator(const models::ModelSpec& base, const RampSpec& ramp,
                              const Tolerances& tol) {
  ramp.validate();
  if (ramp.T == 0.0) {
    return {0.0, Method::adiabatic_generator, {{"T", 0.0}, {"steps", double(ramp.steps)}}};
  }

  // one Fock cutoff for the whole ramp, large enough for both endpoints
  models::ModelSpec spec = base;
  if (models::is_bosonic(base.family)) {
    for (double x : {ramp.x_start, ramp.x_end}) {
      const auto m = models::build(base.with_coupling_ratio(x), tol);
      spec.n_max = std::max(spec.n_max, m.spec().n_max);
    }
  }

  const auto nodes = static_cast<Eigen::Index>(ramp.steps);
  RampSamples s;
  s.times.resize(static_cast<std::size_t>(nodes));
  for (Eigen::Index k = 0; k < nodes; ++k) {
    s.times[static_cast<std::size_t>(k)] =
        ramp.T * static_cast<double>(k) / static_cast<double>(nodes - 1);
  }

  std::optional<models::ModelInstance> constant;
  auto instance_at = [&](double t) {
    if (ramp.schedule == Schedule::constant) {
      if (!constant) {
        constant.emplace(models::build(spec.with_coupling_ratio(ramp.x_start), tol,
                                       models::Truncation::fixed));
      }
      return *constant;
    }
    return models::build(spec.with_coupling_ratio(ramp.x_at(t)), tol,
                         models::Truncation::fixed);
  };

  Eigen::MatrixXcd prev_vectors;
  s.min_gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < nodes; ++k) {
    const double t = s.times[static_cast<std::size_t>(k)];
    const models::ModelInstance m = instance_at(t);
    if (!m.H().is_real() || !m.dH_domega().is_real()) {
      throw std::logic_error("adiabatic generator requires real symmetric Hamiltonians");
    }
    const SpectralDecomposition& sp = m.spectrum();
    const double gap = energy_gap(sp);
    s.min_gap = std::min(s.min_gap, gap);
    if (!(gap > tol.adiabatic_gap)) {
      throw GapGuard("instantaneous gap " + std::to_string(gap) + " at t = " +
                         std::to_string(t) + " below " + std::to_string(tol.adiabatic_gap),
                     gap);
    }

    Eigen::MatrixXcd v = sp.eigenvectors;
    if (k > 0) {
      const double dt = t - s.times[static_cast<std::size_t>(k - 1)];
      for (Eigen::Index n = 0; n < v.cols(); ++n) {
        const cplx o = prev_vectors.col(n).dot(v.col(n));
        if (o.real() < 0.0) v.col(n) = -v.col(n);
        s.berry_max = std::max(s.berry_max, std::abs(o.imag()) / dt);
      }
    }
    if (s.berry_max > tol.berry) {
      throw std::logic_error("instantaneous eigenvectors left the real gauge (Berry term " +
                             std::to_string(s.berry_max) + ")");
    }

    if (k == 0) {
      s.energies.resize(sp.eigenvalues.size(), nodes);
      s.elements.resize(sp.eigenvalues.size(), nodes);
    }
    s.energies.col(k) = sp.eigenvalues;
    s.elements.col(k) = (v.adjoint() * m.dH_domega().apply(v.col(0))).conjugate();
    prev_vectors = std::move(v);
  }

  std::vector<Eigen::Index> all(static_cast<std::size_t>(nodes));
  for (Eigen::Index k = 0; k < nodes; ++k) all[static_cast<std::size_t>(k)] = k;
  std::vector<Eigen::Index> coarse;
  for (Eigen::Index k = 0; k < nodes; k += 2) coarse.push_back(k);
  if (coarse.back() != nodes - 1) coarse.push_back(nodes - 1);

  const double value = 4.0 * generator_variance(s, all);
  const double value_coarse = 4.0 * generator_variance(s, coarse);
  const double shift = std::abs(value - value_coarse);
  if (shift > tol.adiabatic_convergence * std::max(value, value_coarse) + tol.adiabatic_abs) {
    throw ConvergenceGuard("halving the ramp nodes moved the QFI from " +
                               std::to_string(value) + " to " + std::to_string(value_coarse),
                           shift);
  }

  QfiResult r{value, Method::adiabatic_generator, {}};
  r.diagnostics["T"] = ramp.T;
  r.diagnostics["steps"] = ramp.steps;
  r.diagnostics["value_half_steps"] = value_coarse;
  r.diagnostics["convergence_shift"] = shift;
  r.diagnostics["convergence_tol"] = tol.adiabatic_convergence;
  r.diagnostics["min_gap"] = s.min_gap;
  r.diagnostics["berry_max"] = s.berry_max;
  if (models::is_bosonic(spec.family)) r.diagnostics["n_max"] = spec.n_max;
  return r;
}

}  // namespace anticrit::qfi
