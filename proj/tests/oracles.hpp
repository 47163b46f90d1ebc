#pragma once

// Reference computations that share no code with the library: closed forms,
// Kronecker-product builds and Eigen's own eigensolver.

#include <Eigen/Dense>

#include <vector>

namespace oracle {

// Amplitudes of exp[(xi/2)(a^dag^2 - a^2)]|0> in the Fock basis, 0..n_max:
//   c_{2k} = tanh^k(xi) sqrt((2k)!) / (2^k k!) / sqrt(cosh xi), odd entries zero.
Eigen::VectorXd squeezed_amplitudes(double xi, int n_max);

// omega a^dag a + s (g^2 / 4 Omega) (a + a^dag)^2 with s = -1 (low) or +1
// (high), formed by matrix products on a larger space and then projected
// onto levels 0..n_max.
Eigen::MatrixXd effective_by_products(double omega, double Omega, double g, int sign, int n_max);

// omega sum_i sz_i - g sum_i sx_i sx_{i+1} + zz sum_i sz_i sz_{i+1}, periodic,
// assembled from Kronecker products of 2x2 matrices. Site 1 is the least
// significant factor and index bit set means sigma_z = +1.
Eigen::MatrixXd kron_chain(int n_spins, double omega, double g, double zz);

// sum_i sz_i on the same product basis.
Eigen::MatrixXd kron_total_sz(int n_spins);

// omega Sz - (g/N) Sx^2 on the full 2^N product space.
Eigen::MatrixXd kron_lmg(int n_spins, double omega, double g);

// 4 sum_n |<n|dH|0>|^2 2(1 - cos(dE_n T)) / dE_n^2 for time-independent H.
double constant_ramp_qfi(const Eigen::MatrixXd& h, const Eigen::MatrixXd& dh, double T);

// 8 (1 - |<psi|exp(-i d_omega t n)|psi>|) / d_omega^2 from Fock populations.
double fidelity_qfi(const std::vector<double>& populations, double t, double d_omega);

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace oracle
