#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <string>

#include "anticrit/tolerances.hpp"

namespace anticrit {

using cplx = std::complex<double>;

// Label of the basis a state vector is expressed in. Two states can only be
// compared when their labels agree.
struct Basis {
  enum class Kind { generic, fock, dicke, chain, rabi };

  Kind kind = Kind::generic;
  // n_max for fock/rabi, spin count N for dicke/chain, dimension for generic.
  int size = 1;

  static Basis generic(std::size_t dim) { return {Kind::generic, static_cast<int>(dim)}; }
  static Basis fock(int n_max) { return {Kind::fock, n_max}; }
  static Basis dicke(int n_spins) { return {Kind::dicke, n_spins}; }
  static Basis chain(int n_spins) { return {Kind::chain, n_spins}; }
  // Oscillator (outer) times qubit (inner), index = 2 n + s with s = 0 for sigma_z = +1.
  static Basis rabi(int n_max) { return {Kind::rabi, n_max}; }

  std::size_t dim() const;
  std::string label() const;

  friend bool operator==(const Basis&, const Basis&) = default;
};

// Dense Hermitian matrix. Construction validates
//   max_jk |H_jk - conj(H_kj)| <= tol * max_jk |H_jk|.
class HermitianOperator {
 public:
  explicit HermitianOperator(Eigen::MatrixXcd entries,
                             double tol = Tolerances{}.hermiticity);
  static HermitianOperator from_real(const Eigen::MatrixXd& entries,
                                     double tol = Tolerances{}.hermiticity);
  static HermitianOperator identity(std::size_t dim);

  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return entries_; }
  // True when every imaginary part is exactly zero (real symmetric storage).
  bool is_real() const { return real_; }

  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;

  HermitianOperator operator+(const HermitianOperator& rhs) const;
  HermitianOperator operator-(const HermitianOperator& rhs) const;
  HermitianOperator operator*(double scale) const;

 private:
  struct Trusted {};
  HermitianOperator(Eigen::MatrixXcd entries, Trusted);

  Eigen::MatrixXcd entries_;
  bool real_ = false;
};

// Normalized amplitude vector over a labeled basis.
class QuantumState {
 public:
  QuantumState(Eigen::VectorXcd amplitudes, Basis basis,
               double tol = Tolerances{}.norm);
  // Rescales to unit norm first; throws DimensionGuard on a zero vector.
  static QuantumState normalized(Eigen::VectorXcd amplitudes, Basis basis);
  static QuantumState basis_state(Basis basis, std::size_t index);

  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  const Basis& basis() const { return basis_; }
  cplx operator[](std::size_t i) const { return amplitudes_[static_cast<Eigen::Index>(i)]; }

 private:
  Eigen::VectorXcd amplitudes_;
  Basis basis_;
};

struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;    // ascending
  Eigen::MatrixXcd eigenvectors;  // column k belongs to eigenvalues[k]
  Basis basis;

  std::size_t dim() const { return static_cast<std::size_t>(eigenvalues.size()); }
  QuantumState state(std::size_t k) const;
  QuantumState ground_state() const { return state(0); }

  // max_k ||H v_k - E_k v_k||_2
  double max_residual(const HermitianOperator& h) const;
  // max_jk |<v_j|v_k> - delta_jk|
  double max_orthonormality_error() const;
};

// Full dense solve, block by block when the nonzero pattern of H splits into
// disconnected index sets; levels are merged in ascending order (ties keep
// block order). Each eigenvector's global phase is fixed so that its
// largest-magnitude amplitude (first one on ties) is real positive; within
// clusters closer than tol.degenerate_cluster the vectors are re-orthonormalized
// by Gram-Schmidt in index order before the phase is fixed.
SpectralDecomposition eigendecompose(const HermitianOperator& h,
                                     const Tolerances& tol = {});
SpectralDecomposition eigendecompose(const HermitianOperator& h, Basis basis,
                                     const Tolerances& tol = {});

// E1 - E0.
double energy_gap(const SpectralDecomposition& spectrum);

// Re <s|A|s>
double expectation(const HermitianOperator& a, const QuantumState& s);
// <A^2> - <A>^2, with <A^2> evaluated as ||A s||^2.
double variance(const HermitianOperator& a, const QuantumState& s);
// <a|b>
cplx overlap(const QuantumState& a, const QuantumState& b);

}  // namespace anticrit
