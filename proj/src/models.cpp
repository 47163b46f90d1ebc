#include "anticrit/models.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>

#include "anticrit/errors.hpp"
#include "anticrit/spin.hpp"

namespace anticrit::models {

std::string_view family_name(Family f) noexcept {
  switch (f) {
    case Family::rabi_full: return "rabi_full";
    case Family::effective_low: return "effective_low";
    case Family::effective_high: return "effective_high";
    case Family::lmg: return "lmg";
    case Family::tfim: return "tfim";
    case Family::tfim_transverse: return "tfim_transverse";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  for (Family f : {Family::rabi_full, Family::effective_low, Family::effective_high,
                   Family::lmg, Family::tfim, Family::tfim_transverse}) {
    if (family_name(f) == name) return f;
  }
  throw std::invalid_argument("unknown model family '" + std::string(name) + "'");
}

bool is_bosonic(Family f) noexcept {
  return f == Family::rabi_full || f == Family::effective_low || f == Family::effective_high;
}

bool is_chain(Family f) noexcept {
  return f == Family::tfim || f == Family::tfim_transverse;
}

// ------------------------------------------------------------------- spec

double ModelSpec::g_c() const {
  return is_bosonic(family) ? std::sqrt(omega * Omega) : omega;
}

double ModelSpec::x() const {
  return is_bosonic(family) ? g * g / (omega * Omega) : (g / omega) * (g / omega);
}

double ModelSpec::g_over_gc() const { return g / g_c(); }

Sector ModelSpec::sector() const {
  if (family == Family::effective_low) return Sector::low;
  if (family == Family::effective_high) return Sector::high;
  throw std::invalid_argument("family " + std::string(family_name(family)) +
                              " has no effective sector");
}

ModelSpec ModelSpec::with_omega(double new_omega) const {
  ModelSpec s = *this;
  s.omega = new_omega;
  return s;
}

ModelSpec ModelSpec::with_coupling_ratio(double ratio) const {
  if (!(ratio >= 0.0)) throw std::invalid_argument("coupling ratio x must be >= 0");
  ModelSpec s = *this;
  s.g = is_bosonic(family) ? std::sqrt(ratio * omega * Omega) : std::sqrt(ratio) * omega;
  return s;
}

ModelSpec ModelSpec::effective(Sector sector, double omega, double x, int n_max,
                               double omega_ratio) {
  ModelSpec s;
  s.family = sector == Sector::low ? Family::effective_low : Family::effective_high;
  s.omega = omega;
  s.Omega = omega_ratio * omega;
  s.n_max = n_max;
  return s.with_coupling_ratio(x);
}

ModelSpec ModelSpec::rabi(double omega, double Omega, double x, int n_max) {
  ModelSpec s;
  s.family = Family::rabi_full;
  s.omega = omega;
  s.Omega = Omega;
  s.n_max = n_max;
  return s.with_coupling_ratio(x);
}

ModelSpec ModelSpec::lmg(double omega, double g_over_gc, int N) {
  ModelSpec s;
  s.family = Family::lmg;
  s.omega = omega;
  s.g = g_over_gc * omega;
  s.N = N;
  return s;
}

ModelSpec ModelSpec::chain(Family family, double omega, double g_over_gc, int N) {
  if (!is_chain(family)) throw std::invalid_argument("not a chain family");
  ModelSpec s;
  s.family = family;
  s.omega = omega;
  s.g = g_over_gc * omega;
  s.N = N;
  return s;
}

// --------------------------------------------------------------- instance

struct ModelInstance::Cache {
  std::once_flag once;
  std::optional<SpectralDecomposition> spectrum;
};

ModelInstance::ModelInstance(HermitianOperator h, HermitianOperator dh_domega,
                             ModelSpec spec, Basis basis, Tolerances tol)
    : h_(std::move(h)),
      dh_(std::move(dh_domega)),
      spec_(spec),
      basis_(basis),
      tol_(tol),
      cache_(std::make_shared<Cache>()) {}

const SpectralDecomposition& ModelInstance::spectrum() const {
  std::call_once(cache_->once,
                 [this] { cache_->spectrum = eigendecompose(h_, basis_, tol_); });
  return *cache_->spectrum;
}

double ground_top_population(const ModelInstance& model) {
  const Eigen::VectorXcd v = model.spectrum().eigenvectors.col(0);
  const Eigen::Index d = v.size();
  // two Fock levels: two entries for a bare oscillator, four with the qubit
  const Eigen::Index tail = model.basis().kind == Basis::Kind::rabi ? 4 : 2;
  return v.tail(std::min(tail, d)).squaredNorm();
}

namespace {

void check_positive_frequencies(const ModelSpec& spec) {
  if (!(spec.omega > 0.0) || !std::isfinite(spec.omega)) {
    throw std::invalid_argument("omega must be > 0");
  }
  if (is_bosonic(spec.family) && (!(spec.Omega > 0.0) || !std::isfinite(spec.Omega))) {
    throw std::invalid_argument("Omega must be > 0");
  }
  if (!std::isfinite(spec.g)) throw std::invalid_argument("g must be finite");
}

template <typename Builder>
ModelInstance with_truncation_policy(const ModelSpec& spec, const Tolerances& tol,
                                     Truncation truncation, Builder&& make) {
  if (truncation == Truncation::unchecked) return make(spec);

  ModelSpec current = spec;
  for (;;) {
    ModelInstance m = make(current);
    const double top = ground_top_population(m);
    if (top <= tol.truncation_population) return m;
    if (truncation == Truncation::fixed || current.n_max >= tol.n_max_cap) {
      throw TruncationGuard(std::string(family_name(spec.family)) +
                                " ground state holds " + std::to_string(top) +
                                " in the top Fock levels at n_max = " +
                                std::to_string(current.n_max),
                            top);
    }
    current.n_max = std::min(2 * current.n_max, tol.n_max_cap);
  }
}

// (a + a^dag)^2 = a^2 + a^dag^2 + 2 n + 1, written entrywise so the
// truncated matrix has no corner artefact.
Eigen::MatrixXd quadrature_squared(int n_max) {
  const Eigen::Index d = n_max + 1;
  Eigen::MatrixXd q2 = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index n = 0; n < d; ++n) {
    q2(n, n) = 2.0 * static_cast<double>(n) + 1.0;
    if (n >= 2) {
      q2(n, n - 2) = q2(n - 2, n) =
          std::sqrt(static_cast<double>(n) * static_cast<double>(n - 1));
    }
  }
  return q2;
}

Eigen::MatrixXd number_diagonal(int n_max) {
  Eigen::VectorXd n = Eigen::VectorXd::LinSpaced(n_max + 1, 0.0, n_max);
  return n.asDiagonal();
}

}  // namespace

ModelInstance build_rabi_full(const ModelSpec& spec, const Tolerances& tol,
                              Truncation truncation) {
  if (spec.family != Family::rabi_full) throw std::invalid_argument("expected rabi_full spec");
  check_positive_frequencies(spec);
  (void)fock::FockSpace(spec.n_max);

  return with_truncation_policy(spec, tol, truncation, [&](const ModelSpec& s) {
    const Eigen::Index d = s.n_max + 1;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2 * d, 2 * d);
    Eigen::MatrixXd dh = Eigen::MatrixXd::Zero(2 * d, 2 * d);
    for (Eigen::Index n = 0; n < d; ++n) {
      for (Eigen::Index q = 0; q < 2; ++q) {
        const Eigen::Index i = 2 * n + q;
        const double sz = q == 0 ? 1.0 : -1.0;
        h(i, i) = s.omega * static_cast<double>(n) + 0.5 * s.Omega * sz;
        dh(i, i) = static_cast<double>(n);
      }
      if (n + 1 < d) {
        // (g/2) sqrt(n+1) |n+1><n| (x) sigma_x and its transpose
        const double c = 0.5 * s.g * std::sqrt(static_cast<double>(n + 1));
        for (Eigen::Index q = 0; q < 2; ++q) {
          const Eigen::Index from = 2 * n + q;
          const Eigen::Index to = 2 * (n + 1) + (1 - q);
          h(to, from) = h(from, to) = c;
        }
      }
    }
    return ModelInstance(HermitianOperator::from_real(h), HermitianOperator::from_real(dh),
                         s, Basis::rabi(s.n_max), tol);
  });
}

ModelInstance build_effective(Sector sector, const ModelSpec& spec, const Tolerances& tol,
                              Truncation truncation) {
  if (spec.family != Family::effective_low && spec.family != Family::effective_high) {
    throw std::invalid_argument("expected an effective_* spec");
  }
  if (spec.sector() != sector) {
    throw std::invalid_argument("spec family " + std::string(family_name(spec.family)) +
                                " does not match requested sector " + sector_name(sector));
  }
  check_positive_frequencies(spec);
  (void)fock::FockSpace(spec.n_max);

  const double x = spec.x();
  if (sector == Sector::low && x >= 1.0 - tol.critical_margin) {
    throw CriticalPointGuard("effective_low needs g^2/g_c^2 < 1 - " +
                                 std::to_string(tol.critical_margin) + ", got " +
                                 std::to_string(x),
                             x);
  }
  const double sign = sector == Sector::low ? -1.0 : 1.0;

  return with_truncation_policy(spec, tol, truncation, [&](const ModelSpec& s) {
    const double coupling = s.g * s.g / (4.0 * s.Omega);
    const Eigen::MatrixXd n = number_diagonal(s.n_max);
    const Eigen::MatrixXd h = s.omega * n + sign * coupling * quadrature_squared(s.n_max);
    return ModelInstance(HermitianOperator::from_real(h), HermitianOperator::from_real(n), s,
                         Basis::fock(s.n_max), tol);
  });
}

ModelInstance build_lmg(const ModelSpec& spec, const Tolerances& tol) {
  if (spec.family != Family::lmg) throw std::invalid_argument("expected lmg spec");
  check_positive_frequencies(spec);
  const spin::DickeBasis basis(spec.N);
  const spin::SpinTriple s = spin::collective_spin_ops(basis);
  const Eigen::MatrixXcd sx2 = s.x.matrix() * s.x.matrix();
  Eigen::MatrixXcd h = spec.omega * s.z.matrix() - (spec.g / spec.N) * sx2;
  // S_x^2 is real symmetric; drop rounding residue so the real solver is used
  h = h.real().cast<cplx>();
  return ModelInstance(HermitianOperator(std::move(h), tol.hermiticity), s.z, spec,
                       basis.basis(), tol);
}

namespace {

ModelInstance build_chain(const ModelSpec& spec, double zz_coupling, const Tolerances& tol) {
  check_positive_frequencies(spec);
  const spin::ChainBasis basis(spec.N);
  const auto d = static_cast<Eigen::Index>(basis.dim());
  const int n = spec.N;

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
  Eigen::MatrixXd dh = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index state = 0; state < d; ++state) {
    double field = 0.0;
    double zz = 0.0;
    for (int i = 0; i < n; ++i) {
      const int j = (i + 1) % n;
      const double zi = (state >> i) & 1 ? 1.0 : -1.0;
      const double zj = (state >> j) & 1 ? 1.0 : -1.0;
      field += zi;
      zz += zi * zj;
      const Eigen::Index flipped = state ^ (Eigen::Index{1} << i) ^ (Eigen::Index{1} << j);
      h(flipped, state) -= spec.g;
    }
    h(state, state) += spec.omega * field + zz_coupling * zz;
    dh(state, state) = field;
  }
  return ModelInstance(HermitianOperator::from_real(h), HermitianOperator::from_real(dh), spec,
                       basis.basis(), tol);
}

}  // namespace

ModelInstance build_tfim(const ModelSpec& spec, const Tolerances& tol) {
  if (spec.family != Family::tfim) throw std::invalid_argument("expected tfim spec");
  return build_chain(spec, 0.0, tol);
}

ModelInstance build_tfim_transverse(const ModelSpec& spec, const Tolerances& tol) {
  if (spec.family != Family::tfim_transverse) {
    throw std::invalid_argument("expected tfim_transverse spec");
  }
  return build_chain(spec, spec.g, tol);
}

ModelInstance build(const ModelSpec& spec, const Tolerances& tol, Truncation truncation) {
  switch (spec.family) {
    case Family::rabi_full: return build_rabi_full(spec, tol, truncation);
    case Family::effective_low: return build_effective(Sector::low, spec, tol, truncation);
    case Family::effective_high: return build_effective(Sector::high, spec, tol, truncation);
    case Family::lmg: return build_lmg(spec, tol);
    case Family::tfim: return build_tfim(spec, tol);
    case Family::tfim_transverse: return build_tfim_transverse(spec, tol);
  }
  throw std::invalid_argument("unknown family");
}

// ------------------------------------------------------------ closed forms

namespace {

double signed_ratio(Sector sector, double x) {
  if (!std::isfinite(x) || x < 0.0) throw std::invalid_argument("x must be finite and >= 0");
  if (sector == Sector::low && x >= 1.0) {
    throw CriticalPointGuard("low sector needs x < 1, got " + std::to_string(x), x);
  }
  return sector == Sector::low ? -x : x;
}

}  // namespace

double effective_frequency(Sector sector, double omega, double x) {
  return omega * std::sqrt(1.0 + signed_ratio(sector, x));
}

double frequency_derivative_factor(Sector sector, double x) {
  const double s = signed_ratio(sector, x);
  return (2.0 + s) * (2.0 + s) / (4.0 * (1.0 + s));
}

double characteristic_time(Sector sector, double omega, double x) {
  return 1.0 / effective_frequency(sector, omega, x);
}

}  // namespace anticrit::models
