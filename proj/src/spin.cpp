#include "anticrit/spin.hpp"

#include <cmath>
#include <string>

#include "anticrit/errors.hpp"

namespace anticrit::spin {

DickeBasis::DickeBasis(int n_spins) : N(n_spins) {
  if (N < 2) throw DimensionGuard("Dicke basis needs N >= 2, got " + std::to_string(N));
}

ChainBasis::ChainBasis(int n_spins) : N(n_spins) {
  if (N < 3 || N > 14) {
    throw DimensionGuard("chain basis needs 3 <= N <= 14, got " + std::to_string(N));
  }
}

const HermitianOperator& SpinTriple::operator[](Axis a) const {
  switch (a) {
    case Axis::x: return x;
    case Axis::y: return y;
    case Axis::z: return z;
  }
  return z;
}

SpinTriple collective_spin_ops(const DickeBasis& basis) {
  const auto d = static_cast<Eigen::Index>(basis.dim());
  const double s = basis.total_spin();

  Eigen::MatrixXcd sz = Eigen::MatrixXcd::Zero(d, d);
  Eigen::MatrixXcd sp = Eigen::MatrixXcd::Zero(d, d);  // S_+
  for (Eigen::Index k = 0; k < d; ++k) {
    const double m = static_cast<double>(k) - s;
    sz(k, k) = m;
    if (k + 1 < d) sp(k + 1, k) = std::sqrt(s * (s + 1.0) - m * (m + 1.0));
  }
  const Eigen::MatrixXcd sm = sp.adjoint();
  const cplx two_i(0.0, 2.0);
  return {HermitianOperator((sp + sm) / 2.0), HermitianOperator((sp - sm) / two_i),
          HermitianOperator(sz)};
}

HermitianOperator site_pauli(const ChainBasis& basis, int site, Axis axis) {
  if (site < 1 || site > basis.N) {
    throw IndexGuard("site " + std::to_string(site) + " outside 1.." + std::to_string(basis.N));
  }
  const auto d = static_cast<Eigen::Index>(basis.dim());
  const Eigen::Index mask = Eigen::Index{1} << (site - 1);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index in = 0; in < d; ++in) {
    const bool up = (in & mask) != 0;
    switch (axis) {
      case Axis::z:
        m(in, in) = up ? 1.0 : -1.0;
        break;
      case Axis::x:
        m(in ^ mask, in) = 1.0;
        break;
      case Axis::y:
        // sigma_y |up> = i |down>, sigma_y |down> = -i |up>
        m(in ^ mask, in) = up ? cplx(0.0, 1.0) : cplx(0.0, -1.0);
        break;
    }
  }
  return HermitianOperator(std::move(m));
}

SpinTriple chain_total_spin(const ChainBasis& basis) {
  const auto d = static_cast<Eigen::Index>(basis.dim());
  Eigen::MatrixXcd sx = Eigen::MatrixXcd::Zero(d, d);
  Eigen::MatrixXcd sy = Eigen::MatrixXcd::Zero(d, d);
  Eigen::MatrixXcd sz = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i < basis.N; ++i) {
    const Eigen::Index mask = Eigen::Index{1} << i;
    for (Eigen::Index in = 0; in < d; ++in) {
      const bool up = (in & mask) != 0;
      sz(in, in) += up ? 0.5 : -0.5;
      sx(in ^ mask, in) += 0.5;
      sy(in ^ mask, in) += up ? cplx(0.0, 0.5) : cplx(0.0, -0.5);
    }
  }
  return {HermitianOperator(std::move(sx)), HermitianOperator(std::move(sy)),
          HermitianOperator(std::move(sz))};
}

}  // namespace anticrit::spin
