#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "anticrit/fock.hpp"
#include "anticrit/spectral.hpp"
#include "anticrit/tolerances.hpp"

namespace anticrit::models {

enum class Family { rabi_full, effective_low, effective_high, lmg, tfim, tfim_transverse };

std::string_view family_name(Family f) noexcept;
// Throws std::invalid_argument on an unknown name.
Family parse_family(std::string_view name);
bool is_bosonic(Family f) noexcept;
bool is_chain(Family f) noexcept;

// Parametrized model. The coupling ratio x = g^2/g_c^2 is always derived:
// g_c = sqrt(omega * Omega) for the bosonic families and g_c = omega for the
// spin families.
struct ModelSpec {
  Family family = Family::effective_low;
  double omega = 1.0;
  double Omega = 1000.0;  // qubit splitting; bosonic families only
  double g = 0.0;
  int N = 0;        // spin count (lmg, tfim, tfim_transverse)
  int n_max = 300;  // Fock truncation (rabi_full, effective_*)

  double g_c() const;
  double x() const;
  double g_over_gc() const;
  Sector sector() const;  // effective_* only

  ModelSpec with_omega(double new_omega) const;
  ModelSpec with_coupling_ratio(double x) const;  // keeps omega, Omega; sets g >= 0

  // Omega is fixed at omega_ratio * omega and g = sqrt(x * omega * Omega).
  static ModelSpec effective(Sector sector, double omega, double x, int n_max = 300,
                             double omega_ratio = 1000.0);
  static ModelSpec rabi(double omega, double Omega, double x, int n_max = 300);
  static ModelSpec lmg(double omega, double g_over_gc, int N = 200);
  static ModelSpec chain(Family family, double omega, double g_over_gc, int N = 10);
};

// How bosonic builders treat the Fock cutoff.
enum class Truncation {
  escalate,   // double n_max up to tol.n_max_cap until the ground state fits
  fixed,      // keep n_max, throw TruncationGuard if the ground state does not fit
  unchecked,  // keep n_max, no check (convergence studies)
};

class ModelInstance {
 public:
  ModelInstance(HermitianOperator h, HermitianOperator dh_domega, ModelSpec spec,
                Basis basis, Tolerances tol = {});

  const HermitianOperator& H() const { return h_; }
  const HermitianOperator& dH_domega() const { return dh_; }
  const ModelSpec& spec() const { return spec_; }
  const Basis& basis() const { return basis_; }
  const Tolerances& tolerances() const { return tol_; }

  // Full eigendecomposition, computed once and shared between copies.
  const SpectralDecomposition& spectrum() const;

 private:
  struct Cache;

  HermitianOperator h_;
  HermitianOperator dh_;
  ModelSpec spec_;
  Basis basis_;
  Tolerances tol_;
  std::shared_ptr<Cache> cache_;
};

ModelInstance build(const ModelSpec& spec, const Tolerances& tol = {},
                    Truncation truncation = Truncation::escalate);

// omega a^dag a (x) 1 + (Omega/2) 1 (x) sigma_z + (g/2)(a + a^dag) (x) sigma_x
ModelInstance build_rabi_full(const ModelSpec& spec, const Tolerances& tol = {},
                              Truncation truncation = Truncation::escalate);
// omega a^dag a -/+ (g^2/4 Omega)(a + a^dag)^2, minus sign for the low sector
ModelInstance build_effective(Sector sector, const ModelSpec& spec,
                              const Tolerances& tol = {},
                              Truncation truncation = Truncation::escalate);
// omega S_z - (g/N) S_x^2 on the symmetric subspace
ModelInstance build_lmg(const ModelSpec& spec, const Tolerances& tol = {});
// omega sum sigma_z - g sum sigma_x sigma_x, periodic
ModelInstance build_tfim(const ModelSpec& spec, const Tolerances& tol = {});
// omega sum sigma_z - g sum (sigma_x sigma_x - sigma_z sigma_z), periodic
ModelInstance build_tfim_transverse(const ModelSpec& spec, const Tolerances& tol = {});

// Closed-form references of the effective oscillator.
double effective_frequency(Sector sector, double omega, double x);
// (d/d omega [omega sqrt(1 -/+ x)])^2 at fixed g, Omega = (2 -/+ x)^2 / (4 (1 -/+ x))
double frequency_derivative_factor(Sector sector, double x);
// 1 / (omega sqrt(1 -/+ x))
double characteristic_time(Sector sector, double omega, double x);

// Probability weight of the ground state on the two highest Fock levels
// (summed over the qubit for rabi_full).
double ground_top_population(const ModelInstance& model);

}  // namespace anticrit::models
