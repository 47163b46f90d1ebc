#include "anticrit/fock.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "anticrit/errors.hpp"

namespace anticrit {

const char* sector_name(Sector s) noexcept {
  return s == Sector::low ? "low" : "high";
}

namespace fock {

FockSpace::FockSpace(int n) : n_max(n) {
  if (n_max < 2) throw DimensionGuard("n_max must be >= 2, got " + std::to_string(n_max));
}

LadderPair annihilation(const FockSpace& space) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  LadderPair out;
  out.a = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index n = 1; n < d; ++n) out.a(n - 1, n) = std::sqrt(static_cast<double>(n));
  out.a_dag = out.a.adjoint();
  return out;
}

HermitianOperator number_operator(const FockSpace& space) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  Eigen::MatrixXd n = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) n(k, k) = static_cast<double>(k);
  return HermitianOperator::from_real(n);
}

HermitianOperator position_quadrature(const FockSpace& space) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index n = 1; n < d; ++n) {
    q(n - 1, n) = q(n, n - 1) = std::sqrt(static_cast<double>(n));
  }
  return HermitianOperator::from_real(q);
}

SqueezingParameters squeezing_parameter(Sector sector, double x) {
  if (!std::isfinite(x) || x < 0.0) {
    throw std::invalid_argument("x = g^2/g_c^2 must be finite and >= 0");
  }
  if (sector == Sector::low) {
    if (x >= 1.0) {
      throw CriticalPointGuard("low sector needs x < 1 (gap closes at x = 1), got x = " +
                                   std::to_string(x),
                               x);
    }
    return {sector, -0.25 * std::log1p(-x), x};
  }
  return {sector, -0.25 * std::log1p(x), x};
}

QuantumState squeeze_vacuum(double xi, const FockSpace& space, const Tolerances& tol) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  if (xi == 0.0) return QuantumState::basis_state(space.basis(), 0);

  // i K with K = (xi/2)(a^dag^2 - a^2); K is real antisymmetric.
  Eigen::MatrixXcd ik = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index n = 2; n < d; ++n) {
    const double amp = 0.5 * xi * std::sqrt(static_cast<double>(n) * static_cast<double>(n - 1));
    ik(n, n - 2) = cplx(0.0, amp);
    ik(n - 2, n) = cplx(0.0, -amp);
  }
  const SpectralDecomposition gen = eigendecompose(HermitianOperator(std::move(ik)), tol);

  // exp(K) |0> = V exp(-i D) V^dagger |0>
  Eigen::VectorXcd coeff = gen.eigenvectors.row(0).adjoint();
  for (Eigen::Index k = 0; k < d; ++k) {
    coeff[k] *= std::exp(cplx(0.0, -gen.eigenvalues[k]));
  }
  QuantumState psi = QuantumState::normalized(gen.eigenvectors * coeff, space.basis());

  const double top = top_population(psi);
  if (top > tol.truncation_population) {
    throw TruncationGuard("squeezed vacuum with xi = " + std::to_string(xi) +
                              " populates the top levels of n_max = " +
                              std::to_string(space.n_max) + " with " + std::to_string(top),
                          top);
  }
  return psi;
}

QuantumState squeeze_vacuum_auto(double xi, const Tolerances& tol) {
  for (int n_max = tol.n_max_default;; n_max *= 2) {
    const int level = std::min(n_max, tol.n_max_cap);
    try {
      return squeeze_vacuum(xi, FockSpace(level), tol);
    } catch (const TruncationGuard&) {
      if (level >= tol.n_max_cap) throw;
    }
  }
}

MeanExcitations mean_excitations(const SqueezingParameters& p) {
  const double s = std::sinh(p.xi);
  const double approx = p.sector == Sector::low ? 0.25 / std::sqrt(1.0 - p.x)
                                                 : 0.25 * std::sqrt(p.x);
  return {s * s, approx};
}

double top_population(const QuantumState& state) {
  const Eigen::VectorXcd& a = state.amplitudes();
  const Eigen::Index d = a.size();
  double p = std::norm(a[d - 1]);
  if (d >= 2) p += std::norm(a[d - 2]);
  return p;
}

}  // namespace fock
}  // namespace anticrit
