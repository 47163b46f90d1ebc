#include "anticrit/spectral.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "anticrit/errors.hpp"

namespace anticrit {

std::size_t Basis::dim() const {
  switch (kind) {
    case Kind::fock: return static_cast<std::size_t>(size) + 1;
    case Kind::dicke: return static_cast<std::size_t>(size) + 1;
    case Kind::chain: return std::size_t{1} << size;
    case Kind::rabi: return 2 * (static_cast<std::size_t>(size) + 1);
    case Kind::generic: return static_cast<std::size_t>(size);
  }
  return 0;
}

std::string Basis::label() const {
  switch (kind) {
    case Kind::fock: return "fock(" + std::to_string(size) + ")";
    case Kind::dicke: return "dicke(" + std::to_string(size) + ")";
    case Kind::chain: return "chain(" + std::to_string(size) + ")";
    case Kind::rabi: return "rabi(" + std::to_string(size) + ")";
    case Kind::generic: return "generic(" + std::to_string(size) + ")";
  }
  return "unknown";
}

// ---------------------------------------------------------------- operator

HermitianOperator::HermitianOperator(Eigen::MatrixXcd entries, double tol)
    : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw DimensionGuard("operator must be square, got " +
                         std::to_string(entries_.rows()) + "x" +
                         std::to_string(entries_.cols()));
  }
  if (entries_.rows() < 1) throw DimensionGuard("operator dimension must be >= 1");

  const double scale = entries_.cwiseAbs().maxCoeff();
  const double asym = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > tol * scale) {
    throw HermiticityViolation("max |H - H^dagger| = " + std::to_string(asym) +
                                   " exceeds " + std::to_string(tol) + " * " +
                                   std::to_string(scale),
                               asym);
  }
  real_ = (entries_.imag().array() == 0.0).all();
}

HermitianOperator::HermitianOperator(Eigen::MatrixXcd entries, Trusted)
    : entries_(std::move(entries)),
      real_((entries_.imag().array() == 0.0).all()) {}

HermitianOperator HermitianOperator::from_real(const Eigen::MatrixXd& entries,
                                               double tol) {
  return HermitianOperator(entries.cast<cplx>(), tol);
}

HermitianOperator HermitianOperator::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return HermitianOperator(Eigen::MatrixXcd::Identity(n, n));
}

Eigen::VectorXcd HermitianOperator::apply(const Eigen::VectorXcd& v) const {
  if (v.size() != entries_.rows()) {
    throw DimensionGuard("vector of size " + std::to_string(v.size()) +
                         " applied to operator of dim " + std::to_string(dim()));
  }
  return entries_ * v;
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& rhs) const {
  if (rhs.dim() != dim()) throw DimensionGuard("operator sum dimension mismatch");
  return HermitianOperator(entries_ + rhs.entries_, Trusted{});
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& rhs) const {
  if (rhs.dim() != dim()) throw DimensionGuard("operator difference dimension mismatch");
  return HermitianOperator(entries_ - rhs.entries_, Trusted{});
}

HermitianOperator HermitianOperator::operator*(double scale) const {
  return HermitianOperator(entries_ * scale, Trusted{});
}

// ------------------------------------------------------------------- state

QuantumState::QuantumState(Eigen::VectorXcd amplitudes, Basis basis, double tol)
    : amplitudes_(std::move(amplitudes)), basis_(basis) {
  if (static_cast<std::size_t>(amplitudes_.size()) != basis_.dim()) {
    throw DimensionGuard("state of size " + std::to_string(amplitudes_.size()) +
                         " does not fit basis " + basis_.label());
  }
  const double deviation = std::abs(amplitudes_.norm() - 1.0);
  if (deviation > tol) {
    throw DimensionGuard("state norm deviates from 1 by " + std::to_string(deviation));
  }
}

QuantumState QuantumState::normalized(Eigen::VectorXcd amplitudes, Basis basis) {
  const double n = amplitudes.norm();
  if (!(n > 0.0)) throw DimensionGuard("cannot normalize a zero vector");
  amplitudes /= n;
  return QuantumState(std::move(amplitudes), basis);
}

QuantumState QuantumState::basis_state(Basis basis, std::size_t index) {
  const std::size_t d = basis.dim();
  if (index >= d) {
    throw IndexGuard("basis index " + std::to_string(index) + " outside " + basis.label());
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(d));
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return QuantumState(std::move(v), basis);
}

// ----------------------------------------------------------- decomposition

QuantumState SpectralDecomposition::state(std::size_t k) const {
  if (k >= dim()) {
    throw IndexGuard("eigenvector index " + std::to_string(k) + " >= " +
                     std::to_string(dim()));
  }
  return QuantumState(eigenvectors.col(static_cast<Eigen::Index>(k)), basis);
}

double SpectralDecomposition::max_residual(const HermitianOperator& h) const {
  const Eigen::MatrixXcd r =
      h.matrix() * eigenvectors - eigenvectors * eigenvalues.cast<cplx>().asDiagonal();
  return r.colwise().norm().maxCoeff();
}

double SpectralDecomposition::max_orthonormality_error() const {
  const auto n = static_cast<Eigen::Index>(dim());
  const Eigen::MatrixXcd g =
      eigenvectors.adjoint() * eigenvectors - Eigen::MatrixXcd::Identity(n, n);
  return g.cwiseAbs().maxCoeff();
}

namespace {

void solve_real(Eigen::MatrixXd a, Eigen::VectorXd& w, Eigen::MatrixXcd& v) {
  const auto n = static_cast<lapack_int>(a.rows());
  w.resize(n);
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', n, a.data(), n, w.data());
  if (info != 0) {
    throw std::runtime_error("dsyevd failed with info = " + std::to_string(info));
  }
  v = a.cast<cplx>();
}

void solve_complex(Eigen::MatrixXcd a, Eigen::VectorXd& w, Eigen::MatrixXcd& v) {
  const auto n = static_cast<lapack_int>(a.rows());
  v = std::move(a);
  w.resize(n);
  const lapack_int info =
      LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'U', n,
                     reinterpret_cast<lapack_complex_double*>(v.data()), n, w.data());
  if (info != 0) {
    throw std::runtime_error("zheevd failed with info = " + std::to_string(info));
  }
}

// Connected components of the graph with an edge wherever H_jk != 0, each
// listed in increasing index order. Symmetry-conserving models (parity of the
// chains, of m in LMG, of n in the oscillators) split into independent blocks.
std::vector<std::vector<Eigen::Index>> components(const Eigen::MatrixXcd& m) {
  const Eigen::Index n = m.rows();
  std::vector<Eigen::Index> label(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<Eigen::Index>> out;
  std::vector<Eigen::Index> stack;
  for (Eigen::Index seed = 0; seed < n; ++seed) {
    if (label[seed] >= 0) continue;
    const auto id = static_cast<Eigen::Index>(out.size());
    out.emplace_back();
    label[seed] = id;
    stack.push_back(seed);
    while (!stack.empty()) {
      const Eigen::Index j = stack.back();
      stack.pop_back();
      out.back().push_back(j);
      for (Eigen::Index k = 0; k < n; ++k) {
        if (label[k] < 0 && m(k, j) != cplx(0.0, 0.0)) {
          label[k] = id;
          stack.push_back(k);
        }
      }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

void solve(const HermitianOperator& h, Eigen::VectorXd& w, Eigen::MatrixXcd& v) {
  const auto blocks = components(h.matrix());
  if (blocks.size() == 1) {
    if (h.is_real()) {
      solve_real(h.matrix().real(), w, v);
    } else {
      solve_complex(h.matrix(), w, v);
    }
    return;
  }

  struct Level {
    double energy;
    std::size_t block;
    Eigen::Index local;
  };
  std::vector<Level> levels;
  std::vector<Eigen::MatrixXcd> vectors(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& idx = blocks[b];
    const auto size = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXcd sub(size, size);
    for (Eigen::Index c = 0; c < size; ++c)
      for (Eigen::Index r = 0; r < size; ++r) sub(r, c) = h.matrix()(idx[r], idx[c]);
    Eigen::VectorXd wb;
    if (h.is_real()) {
      solve_real(sub.real(), wb, vectors[b]);
    } else {
      solve_complex(std::move(sub), wb, vectors[b]);
    }
    for (Eigen::Index k = 0; k < size; ++k) levels.push_back({wb[k], b, k});
  }
  std::stable_sort(levels.begin(), levels.end(),
                   [](const Level& a, const Level& b) { return a.energy < b.energy; });

  const auto n = static_cast<Eigen::Index>(h.dim());
  w.resize(n);
  v = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Level& l = levels[static_cast<std::size_t>(k)];
    w[k] = l.energy;
    const auto& idx = blocks[l.block];
    for (std::size_t r = 0; r < idx.size(); ++r) {
      v(idx[r], k) = vectors[l.block](static_cast<Eigen::Index>(r), l.local);
    }
  }
}

// Modified Gram-Schmidt over columns [first, last).
void orthonormalize_cluster(Eigen::MatrixXcd& v, Eigen::Index first, Eigen::Index last) {
  for (Eigen::Index k = first; k < last; ++k) {
    for (Eigen::Index j = first; j < k; ++j) {
      const cplx proj = v.col(j).dot(v.col(k));
      v.col(k) -= proj * v.col(j);
    }
    v.col(k).normalize();
  }
}

void fix_phase(Eigen::Ref<Eigen::VectorXcd> col) {
  const Eigen::VectorXd mag = col.cwiseAbs();
  const double peak = mag.maxCoeff();
  Eigen::Index pivot = 0;
  for (Eigen::Index i = 0; i < mag.size(); ++i) {
    if (mag[i] >= peak * (1.0 - 1e-12)) {
      pivot = i;
      break;
    }
  }
  const cplx a = col[pivot];
  if (std::abs(a) == 0.0) return;
  const cplx rot = std::conj(a) / std::abs(a);
  if (rot != cplx(1.0, 0.0)) col *= rot;
  col[pivot] = cplx(col[pivot].real(), 0.0);
}

}  // namespace

SpectralDecomposition eigendecompose(const HermitianOperator& h, const Tolerances& tol) {
  return eigendecompose(h, Basis::generic(h.dim()), tol);
}

SpectralDecomposition eigendecompose(const HermitianOperator& h, Basis basis,
                                     const Tolerances& tol) {
  if (h.dim() > tol.max_dim) {
    throw DimensionGuard("dimension " + std::to_string(h.dim()) +
                         " exceeds configured maximum " + std::to_string(tol.max_dim));
  }
  if (basis.dim() != h.dim()) {
    throw DimensionGuard("basis " + basis.label() + " does not match operator dim " +
                         std::to_string(h.dim()));
  }

  SpectralDecomposition out;
  out.basis = basis;
  solve(h, out.eigenvalues, out.eigenvectors);

  const Eigen::Index n = out.eigenvalues.size();
  Eigen::Index start = 0;
  for (Eigen::Index k = 1; k <= n; ++k) {
    const bool breaks =
        k == n || out.eigenvalues[k] - out.eigenvalues[k - 1] >= tol.degenerate_cluster;
    if (breaks) {
      if (k - start > 1) orthonormalize_cluster(out.eigenvectors, start, k);
      start = k;
    }
  }
  for (Eigen::Index k = 0; k < n; ++k) fix_phase(out.eigenvectors.col(k));
  return out;
}

double energy_gap(const SpectralDecomposition& spectrum) {
  if (spectrum.dim() < 2) {
    throw DimensionGuard("energy gap needs at least two levels");
  }
  return spectrum.eigenvalues[1] - spectrum.eigenvalues[0];
}

double expectation(const HermitianOperator& a, const QuantumState& s) {
  if (a.dim() != s.dim()) {
    throw DimensionGuard("operator dim " + std::to_string(a.dim()) +
                         " vs state dim " + std::to_string(s.dim()));
  }
  return s.amplitudes().dot(a.apply(s.amplitudes())).real();
}

double variance(const HermitianOperator& a, const QuantumState& s) {
  if (a.dim() != s.dim()) {
    throw DimensionGuard("operator dim " + std::to_string(a.dim()) +
                         " vs state dim " + std::to_string(s.dim()));
  }
  const Eigen::VectorXcd as = a.apply(s.amplitudes());
  const double mean = s.amplitudes().dot(as).real();
  return as.squaredNorm() - mean * mean;
}

cplx overlap(const QuantumState& a, const QuantumState& b) {
  if (!(a.basis() == b.basis())) {
    throw BasisGuard("cannot overlap " + a.basis().label() + " with " + b.basis().label());
  }
  return a.amplitudes().dot(b.amplitudes());
}

}  // namespace anticrit
