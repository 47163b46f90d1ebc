#include "anticrit/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>

#include "anticrit/errors.hpp"
#include "anticrit/fock.hpp"
#include "anticrit/qfi.hpp"
#include "anticrit/spin.hpp"

namespace anticrit::sweep {

std::string_view sweep_family_name(SweepFamily f) noexcept {
  switch (f) {
    case SweepFamily::effective: return "effective";
    case SweepFamily::lmg: return "lmg";
    case SweepFamily::tfim: return "tfim";
    case SweepFamily::tfim_transverse: return "tfim_transverse";
  }
  return "unknown";
}

SweepFamily parse_sweep_family(std::string_view name) {
  for (SweepFamily f : {SweepFamily::effective, SweepFamily::lmg, SweepFamily::tfim,
                        SweepFamily::tfim_transverse}) {
    if (sweep_family_name(f) == name) return f;
  }
  throw std::invalid_argument("unknown sweep family '" + std::string(name) + "'");
}

// ------------------------------------------------------------------- grid

Grid Grid::linear(double start, double stop, int count) {
  if (count < 2) throw std::invalid_argument("linear grid needs count >= 2");
  if (!std::isfinite(start) || !std::isfinite(stop)) {
    throw std::invalid_argument("grid bounds must be finite");
  }
  Grid g;
  g.points.resize(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(count - 1);
    g.points[static_cast<std::size_t>(i)] = start + (stop - start) * f;
  }
  g.points.back() = stop;
  g.validate();
  return g;
}

namespace {

double parse_number(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

Grid Grid::parse(std::string_view text) {
  const auto a = text.find(':');
  const auto b = a == std::string_view::npos ? a : text.find(':', a + 1);
  if (a == std::string_view::npos || b == std::string_view::npos ||
      text.find(':', b + 1) != std::string_view::npos) {
    throw std::invalid_argument("grid must be start:stop:count, got '" + std::string(text) + "'");
  }
  const double start = parse_number(text.substr(0, a));
  const double stop = parse_number(text.substr(a + 1, b - a - 1));
  const std::string_view count_text = text.substr(b + 1);
  int count = 0;
  const auto res = std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
  if (res.ec != std::errc{} || res.ptr != count_text.data() + count_text.size()) {
    throw std::invalid_argument("grid count must be an integer, got '" +
                                std::string(count_text) + "'");
  }
  return linear(start, stop, count);
}

void Grid::validate() const {
  if (points.empty()) throw std::invalid_argument("grid is empty");
  for (double p : points) {
    if (!std::isfinite(p)) throw std::invalid_argument("grid points must be finite");
  }
  if (points.size() < 2) return;
  const bool up = points[1] > points[0];
  for (std::size_t i = 1; i < points.size(); ++i) {
    const bool ok = up ? points[i] > points[i - 1] : points[i] < points[i - 1];
    if (!ok) throw std::invalid_argument("grid must be strictly monotone");
  }
}

SweepConfig SweepConfig::defaults(SweepFamily family) {
  SweepConfig c;
  c.family = family;
  switch (family) {
    case SweepFamily::effective:
      c.grid = Grid::linear(-16.0, 0.95, 200);
      break;
    case SweepFamily::lmg:
      c.N = 200;
      c.grid = Grid::linear(0.0, 0.98, 100);
      break;
    case SweepFamily::tfim:
    case SweepFamily::tfim_transverse:
      c.N = 10;
      c.grid = Grid::linear(-3.0, 3.0, 121);
      c.with_fd = false;
      break;
  }
  return c;
}

// -------------------------------------------------------------------- row

std::optional<double> SweepRow::column(std::string_view name) const {
  if (name == "x_signed") return x_signed;
  if (name == "g_over_gc") return g_over_gc;
  if (name == "x") return x;
  if (name == "gap01") return gap01;
  if (name == "gap02") return gap02;
  if (name == "qfi_spectral") return qfi_spectral;
  if (name == "qfi_analytic") return qfi_analytic;
  if (name == "qfi_fd") return qfi_fd;
  if (name == "qfi_times_gap") return qfi_times_gap;
  if (name == "qfi_times_gap_sq") return qfi_times_gap_sq;
  if (name == "mean_n") return mean_n;
  if (name == "mean_sz") return mean_sz;
  if (name == "mean_sz_plus_half_N") return mean_sz_plus_half_N;
  if (name == "var_sx") return var_sx;
  if (name == "var_sy") return var_sy;
  if (name == "var_sz") return var_sz;
  if (name == "xi") return xi;
  throw std::invalid_argument("unknown column '" + std::string(name) + "'");
}

std::vector<std::string> default_columns(SweepFamily family) {
  switch (family) {
    case SweepFamily::effective:
      return {"x_signed", "g_over_gc", "x", "gap01", "gap02", "qfi_spectral", "qfi_analytic",
              "qfi_fd", "qfi_times_gap", "qfi_times_gap_sq", "mean_n", "xi", "status"};
    case SweepFamily::lmg:
      return {"g_over_gc", "x", "gap01", "qfi_spectral", "qfi_fd", "qfi_times_gap",
              "qfi_times_gap_sq", "mean_sz", "mean_sz_plus_half_N", "var_sx", "var_sy",
              "var_sz", "status"};
    case SweepFamily::tfim:
    case SweepFamily::tfim_transverse:
      return {"g_over_gc", "x", "gap01", "qfi_spectral", "qfi_fd", "qfi_times_gap",
              "qfi_times_gap_sq", "mean_sz", "var_sx", "var_sy", "var_sz", "status"};
  }
  return {};
}

namespace {

void check_columns(const SweepConfig& config) {
  if (config.columns.empty()) return;
  const std::vector<std::string> allowed = default_columns(config.family);
  std::set<std::string> seen;
  for (const std::string& c : config.columns) {
    if (std::find(allowed.begin(), allowed.end(), c) == allowed.end()) {
      throw std::invalid_argument("column '" + c + "' is not produced by the " +
                                  std::string(sweep_family_name(config.family)) + " sweep");
    }
    if (!seen.insert(c).second) throw std::invalid_argument("column '" + c + "' repeated");
  }
}

// Collects guard names in firing order without duplicates.
class Status {
 public:
  void add(std::string_view name) {
    if (std::find(names_.begin(), names_.end(), name) == names_.end()) {
      names_.emplace_back(name);
    }
  }
  std::string str() const {
    if (names_.empty()) return "ok";
    std::string s;
    for (const auto& n : names_) {
      if (!s.empty()) s += ';';
      s += n;
    }
    return s;
  }

 private:
  std::vector<std::string> names_;
};

// Runs fn(i) for i in [0, count) on `jobs` threads. Guard errors are handled
// inside fn; anything else escaping a worker is rethrown here.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
  unsigned workers = jobs > 0 ? static_cast<unsigned>(jobs) : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

template <typename Fn>
void guarded(Status& status, Fn&& fn) {
  try {
    fn();
  } catch (const GuardError& e) {
    status.add(e.name());
  }
}

void fill_metrics(SweepRow& row, Status& status) {
  if (!row.qfi_spectral || !row.gap01) return;
  guarded(status, [&] {
    const auto m = qfi::normalized_metrics(*row.qfi_spectral, *row.gap01);
    row.qfi_times_gap = m.qfi_times_gap;
    row.qfi_times_gap_sq = m.qfi_times_gap_sq;
  });
}

SweepRow effective_row(const SweepConfig& config, double x_signed) {
  SweepRow row;
  Status status;
  const Sector sector = x_signed > 0.0 ? Sector::low : Sector::high;
  const double x = std::abs(x_signed);
  row.x_signed = x_signed;
  row.x = x;
  row.g_over_gc = std::sqrt(x);

  guarded(status, [&] {
    row.xi = fock::squeezing_parameter(sector, x).xi;
    row.qfi_analytic = qfi::analytic_squeezed(sector, config.omega, x).value;
  });

  const models::ModelSpec spec = models::ModelSpec::effective(
      sector, config.omega, x, config.n_max, config.omega_ratio);
  guarded(status, [&] {
    const models::ModelInstance model = models::build(spec, config.tol);
    const SpectralDecomposition& sp = model.spectrum();
    row.n_max = model.spec().n_max;
    row.gap01 = sp.eigenvalues[1] - sp.eigenvalues[0];
    row.gap02 = sp.eigenvalues[2] - sp.eigenvalues[0];
    row.mean_n = expectation(model.dH_domega(), sp.ground_state());
    guarded(status, [&] { row.qfi_spectral = qfi::spectral_sum(model).value; });
    if (config.with_fd) {
      guarded(status, [&] { row.qfi_fd = qfi::state_fd(spec, std::nullopt, config.tol).value; });
    }
  });
  fill_metrics(row, status);
  row.status = status.str();
  return row;
}

SweepRow spin_row(const SweepConfig& config, const models::ModelSpec& spec,
                  const spin::SpinTriple& ops) {
  SweepRow row;
  Status status;
  row.g_over_gc = spec.g_over_gc();
  row.x = spec.x();
  guarded(status, [&] {
    const models::ModelInstance model = models::build(spec, config.tol);
    const SpectralDecomposition& sp = model.spectrum();
    const QuantumState psi = sp.ground_state();
    row.gap01 = energy_gap(sp);
    row.mean_sz = expectation(ops.z, psi);
    row.var_sx = variance(ops.x, psi);
    row.var_sy = variance(ops.y, psi);
    row.var_sz = variance(ops.z, psi);
    if (config.family == SweepFamily::lmg) row.mean_sz_plus_half_N = *row.mean_sz + 0.5 * spec.N;
    guarded(status, [&] { row.qfi_spectral = qfi::spectral_sum(model).value; });
    if (config.with_fd) {
      guarded(status, [&] { row.qfi_fd = qfi::state_fd(spec, std::nullopt, config.tol).value; });
    }
  });
  fill_metrics(row, status);
  row.status = status.str();
  return row;
}

std::vector<SweepRow> run_rows(const SweepConfig& config, const std::vector<double>& points,
                               const std::function<SweepRow(double)>& evaluate) {
  std::vector<SweepRow> rows(points.size());
  parallel_for(points.size(), config.jobs, [&](std::size_t i) { rows[i] = evaluate(points[i]); });
  return rows;
}

}  // namespace

std::vector<SweepRow> sweep_effective(const SweepConfig& config) {
  if (config.family != SweepFamily::effective) throw std::invalid_argument("expected effective config");
  config.grid.validate();
  check_columns(config);

  std::vector<double> points;
  for (double p : config.grid.points) {
    if (std::abs(p - 1.0) <= config.tol.critical_exclusion) continue;
    points.push_back(p);
  }
  std::sort(points.begin(), points.end());
  return run_rows(config, points, [&](double p) { return effective_row(config, p); });
}

std::vector<SweepRow> sweep_lmg(const SweepConfig& config) {
  if (config.family != SweepFamily::lmg) throw std::invalid_argument("expected lmg config");
  config.grid.validate();
  check_columns(config);
  const spin::SpinTriple ops = spin::collective_spin_ops(spin::DickeBasis(config.N));
  return run_rows(config, config.grid.points, [&](double p) {
    return spin_row(config, models::ModelSpec::lmg(config.omega, p, config.N), ops);
  });
}

std::vector<SweepRow> sweep_chain(const SweepConfig& config) {
  if (config.family != SweepFamily::tfim && config.family != SweepFamily::tfim_transverse) {
    throw std::invalid_argument("expected a chain config");
  }
  config.grid.validate();
  check_columns(config);
  const models::Family family = config.family == SweepFamily::tfim
                                    ? models::Family::tfim
                                    : models::Family::tfim_transverse;
  const spin::SpinTriple ops = spin::chain_total_spin(spin::ChainBasis(config.N));
  return run_rows(config, config.grid.points, [&](double p) {
    return spin_row(config, models::ModelSpec::chain(family, config.omega, p, config.N), ops);
  });
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  switch (config.family) {
    case SweepFamily::effective: return sweep_effective(config);
    case SweepFamily::lmg: return sweep_lmg(config);
    case SweepFamily::tfim:
    case SweepFamily::tfim_transverse: return sweep_chain(config);
  }
  throw std::invalid_argument("unknown sweep family");
}

// ------------------------------------------------------------ convergence

ConvergenceReport convergence_report(const models::ModelSpec& spec,
                                     const std::vector<int>& levels, const Tolerances& tol) {
  if (!models::is_bosonic(spec.family)) {
    throw std::invalid_argument("convergence report needs a bosonic family");
  }
  if (levels.empty()) throw std::invalid_argument("no truncation levels given");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] < 2) throw std::invalid_argument("truncation levels must be >= 2");
    if (i > 0 && levels[i] == levels[i - 1]) {
      throw std::invalid_argument("duplicate truncation level " + std::to_string(levels[i]));
    }
    if (i > 0 && levels[i] < levels[i - 1]) {
      throw std::invalid_argument("truncation levels must be increasing");
    }
  }

  auto close = [&](double a, double b) {
    return std::abs(a - b) <= tol.convergence_rel * std::max(std::abs(a), std::abs(b));
  };

  ConvergenceReport report;
  for (int level : levels) {
    models::ModelSpec s = spec;
    s.n_max = level;
    const models::ModelInstance m = models::build(s, tol, models::Truncation::unchecked);
    const SpectralDecomposition& sp = m.spectrum();
    ConvergenceRow row{level, sp.eigenvalues[0], energy_gap(sp),
                       expectation(m.dH_domega(), sp.ground_state()), false};
    if (!report.rows.empty()) {
      const ConvergenceRow& prev = report.rows.back();
      row.converged = close(row.ground_energy, prev.ground_energy) && close(row.gap, prev.gap) &&
                      close(row.mean_n, prev.mean_n);
      if (row.converged && !report.first_converged) report.first_converged = level;
    }
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace anticrit::sweep
