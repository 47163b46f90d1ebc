#pragma once

#include "anticrit/spectral.hpp"

namespace anticrit::spin {

// Maximal-spin subspace S = N/2 of N spin-1/2 particles; index k <-> m = k - N/2.
struct DickeBasis {
  explicit DickeBasis(int n_spins);

  int N;
  double total_spin() const { return 0.5 * N; }
  std::size_t dim() const { return static_cast<std::size_t>(N) + 1; }
  Basis basis() const { return Basis::dicke(N); }
};

// Product basis of a periodic chain. Bit (i - 1) of the index is set when
// site i points up (sigma_z = +1); site 1 is the least significant bit.
struct ChainBasis {
  explicit ChainBasis(int n_spins);

  int N;
  std::size_t dim() const { return std::size_t{1} << N; }
  Basis basis() const { return Basis::chain(N); }
};

enum class Axis { x, y, z };

struct SpinTriple {
  HermitianOperator x;
  HermitianOperator y;
  HermitianOperator z;

  const HermitianOperator& operator[](Axis a) const;
};

SpinTriple collective_spin_ops(const DickeBasis& basis);

// sigma_axis on `site` (1-based), identity elsewhere.
HermitianOperator site_pauli(const ChainBasis& basis, int site, Axis axis);

// S_alpha = sum_i sigma_alpha^(i) / 2 on the chain.
SpinTriple chain_total_spin(const ChainBasis& basis);

}  // namespace anticrit::spin
