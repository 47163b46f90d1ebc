// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance --golden DIR         compare default sweeps against DIR/*.csv
//   acceptance --write-golden DIR   regenerate DIR/*.csv and exit

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "anticrit/errors.hpp"
#include "anticrit/format.hpp"
#include "anticrit/fock.hpp"
#include "anticrit/models.hpp"
#include "anticrit/qfi.hpp"
#include "anticrit/sweep.hpp"
#include "oracles.hpp"

using namespace anticrit;
using models::Family;
using models::ModelSpec;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

const std::vector<double> kLowGrid = {0.1, 0.25, 0.5, 0.75, 0.9};
const std::vector<double> kHighGrid = {0.5, 1.0, 4.0, 16.0};

Verdict critical_side() {
  Timer timer;
  double worst = 0.0;
  for (double x : kLowGrid) {
    const double num = qfi::spectral_sum(models::build(ModelSpec::effective(Sector::low, 1.0, x))).value;
    worst = std::max(worst, rel(num, qfi::analytic_squeezed(Sector::low, 1.0, x).value));
  }
  const double at_quarter =
      qfi::spectral_sum(models::build(ModelSpec::effective(Sector::low, 1.0, 0.25))).value;
  const double elapsed = timer.seconds();
  Verdict v;
  v.pass = worst <= 1e-6 && std::abs(at_quarter - 0.0138889) < 5e-8 && elapsed < 5.0;
  v.detail = "max rel err " + fmt(worst, 3) + ", x=0.25 -> " + fmt(at_quarter, 9) + ", " +
             fmt(elapsed, 3) + " s";
  return v;
}

Verdict anti_critical_side() {
  double worst = 0.0;
  for (double x : kHighGrid) {
    const double num = qfi::spectral_sum(models::build(ModelSpec::effective(Sector::high, 1.0, x))).value;
    worst = std::max(worst, rel(num, qfi::analytic_squeezed(Sector::high, 1.0, x).value));
  }
  const auto m400 = models::build(ModelSpec::effective(Sector::high, 1.0, 400.0));
  const double plateau = qfi::spectral_sum(m400).value;
  Verdict v;
  v.pass = worst <= 1e-6 && rel(plateau, 0.125) <= 0.01;
  v.detail = "max rel err " + fmt(worst, 3) + ", x=400 -> " + fmt(plateau, 7) + " (" +
             fmt(100 * rel(plateau, 0.125), 3) + "% below 1/8, n_max " +
             std::to_string(m400.spec().n_max) + ")";
  return v;
}

Verdict variance_identity() {
  double worst_closed = 0.0, worst_numeric = 0.0;
  for (Sector sector : {Sector::low, Sector::high}) {
    const double s = sector == Sector::low ? 1.0 : -1.0;
    for (double x : sector == Sector::low ? kLowGrid : kHighGrid) {
      const double n = fock::mean_excitations(fock::squeezing_parameter(sector, x)).exact;
      const double d = qfi::squeezing_derivative(sector, 1.0, x);
      worst_closed = std::max(worst_closed, std::abs(2 * n * (n + 1) / (1 - s * x) - 2 * d * d));
      const auto m = models::build(ModelSpec::effective(sector, 1.0, x));
      const double var_n = variance(m.dH_domega(), m.spectrum().ground_state());
      worst_numeric = std::max(worst_numeric, std::abs(var_n / (1 - s * x) - 2 * d * d));
    }
  }
  Verdict v;
  v.pass = worst_closed <= 1e-12 && worst_numeric <= 1e-6;
  v.detail = "closed-form residual " + fmt(worst_closed, 3) + ", diagonalized residual " +
             fmt(worst_numeric, 3);
  return v;
}

Verdict phase_imprint() {
  const double xi = -std::log(0.25) / 4.0;  // 0.3465736
  const fock::FockSpace space(120);
  const auto state = fock::squeeze_vacuum(xi, space);
  const double q = qfi::phase_imprint(state, fock::number_operator(space), 1.0).value;
  std::vector<double> pop;
  for (Eigen::Index k = 0; k < state.amplitudes().size(); ++k) pop.push_back(std::norm(state.amplitudes()(k)));
  const double fid = oracle::fidelity_qfi(pop, 1.0, 1e-3);
  Verdict v;
  v.pass = std::abs(q - 1.125) <= 1e-8 && rel(fid, q) <= 1e-4;
  v.detail = "4t^2 Var(n) = " + fmt(q, 12) + ", fidelity FD = " + fmt(fid, 9) + " (rel " +
             fmt(rel(fid, q), 3) + ")";
  return v;
}

Verdict constant_ramp() {
  const auto base = ModelSpec::effective(Sector::low, 1.0, 0.25);
  const double period = 2 * std::numbers::pi / (2 * std::sqrt(0.75));
  Verdict v;
  for (double T : {1.0, 2.5, period}) {
    qfi::RampSpec ramp;
    ramp.x_start = ramp.x_end = 0.25;
    ramp.T = T;
    ramp.schedule = qfi::Schedule::constant;
    const auto r = qfi::adiabatic_generator(base, ramp);
    const int n_max = static_cast<int>(r.diagnostics.at("n_max"));
    const Eigen::MatrixXd h = oracle::effective_by_products(1.0, base.Omega, base.g, -1, n_max);
    const Eigen::MatrixXd dh = Eigen::VectorXd::LinSpaced(n_max + 1, 0, n_max).asDiagonal();
    const double ref = oracle::constant_ramp_qfi(h, dh, T);
    const bool ok = T == period ? std::abs(r.value) <= 1e-6 && std::abs(ref) <= 1e-6
                                : rel(r.value, ref) <= 1e-4;
    v.pass = v.pass && ok;
    v.detail += "T=" + fmt(T, 5) + ": " + fmt(r.value, 7) + " vs " + fmt(ref, 7) + "; ";
  }
  v.detail.resize(v.detail.size() - 2);
  return v;
}

Verdict sandwich() {
  Timer timer;
  int checked = 0, violated = 0, refused = 0;
  auto check = [&](const ModelSpec& spec) {
    const auto m = models::build(spec);
    const auto& sp = m.spectrum();
    const double gap = energy_gap(sp);
    double value = 0.0;
    try {
      value = qfi::spectral_sum(m).value;
    } catch (const DegeneracyGuard&) {
      ++refused;
      return;
    }
    const Eigen::VectorXcd dpsi = m.dH_domega().apply(sp.eigenvectors.col(0));
    const double m1 = std::norm(sp.eigenvectors.col(1).dot(dpsi));
    const double lower = 4 * m1 / (gap * gap);
    const double upper = 4 * variance(m.dH_domega(), sp.ground_state()) / (gap * gap);
    ++checked;
    if (!(lower <= value && value <= upper)) ++violated;
  };
  for (double g : sweep::Grid::linear(0.0, 0.98, 25).points) check(ModelSpec::lmg(1.0, g, 200));
  for (Family f : {Family::tfim, Family::tfim_transverse}) {
    for (double g : sweep::Grid::linear(-3.0, 3.0, 25).points) check(ModelSpec::chain(f, 1.0, g, 10));
  }
  const double elapsed = timer.seconds();
  Verdict v;
  v.pass = violated == 0 && refused == 0 && checked == 75 && elapsed < 60.0;
  v.detail = std::to_string(checked) + " points, " + std::to_string(violated) + " violations, " +
             std::to_string(refused) + " degenerate, " + fmt(elapsed, 3) + " s";
  return v;
}

Verdict symmetry_pair() {
  double gap_asym = 0.0, qfi_asym = 0.0;
  for (double g : {0.5, 1.0, 2.0}) {
    const auto plus = models::build(ModelSpec::chain(Family::tfim, 1.0, g));
    const auto minus = models::build(ModelSpec::chain(Family::tfim, 1.0, -g));
    gap_asym = std::max(gap_asym, std::abs(energy_gap(plus.spectrum()) - energy_gap(minus.spectrum())));
    qfi_asym = std::max(qfi_asym, std::abs(qfi::spectral_sum(plus).value - qfi::spectral_sum(minus).value));
  }
  auto tgap = [](double g) {
    return energy_gap(models::build(ModelSpec::chain(Family::tfim_transverse, 1.0, g)).spectrum());
  };
  const double split = std::abs(tgap(0.5) - tgap(-0.5));
  const double gap0 = tgap(0.0);
  int opening_sign = 0;
  for (int sign : {+1, -1}) {
    bool all = true;
    for (double a : sweep::Grid::linear(0.5, 2.0, 7).points) all = all && tgap(sign * a) > gap0;
    if (all) opening_sign = sign;
  }
  Verdict v;
  v.pass = gap_asym <= 1e-8 && qfi_asym <= 1e-8 && split > 1e-3 && opening_sign != 0;
  v.detail = "tfim |gap(g)-gap(-g)| " + fmt(gap_asym, 3) + ", |qfi(g)-qfi(-g)| " + fmt(qfi_asym, 3) +
             "; transverse split at 0.5 = " + fmt(split, 4) + ", gap opens for g " +
             (opening_sign > 0 ? "> 0" : opening_sign < 0 ? "< 0" : "(neither sign)");
  return v;
}

Verdict scaling_slopes() {
  std::vector<double> lx, lq, ln;
  for (double x : sweep::Grid::linear(0.9, 0.99, 10).points) {
    lx.push_back(std::log(1 - x));
    lq.push_back(std::log(qfi::analytic_squeezed(Sector::low, 1.0, x).value));
    ln.push_back(std::log(fock::mean_excitations(fock::squeezing_parameter(Sector::low, x)).exact));
  }
  std::vector<double> hx, hn;
  for (double x : sweep::Grid::linear(25.0, 400.0, 10).points) {
    hx.push_back(std::log(x));
    hn.push_back(std::log(fock::mean_excitations(fock::squeezing_parameter(Sector::high, x)).exact));
  }
  const double s_qfi = oracle::fit_slope(lx, lq);
  const double s_low = oracle::fit_slope(lx, ln);
  const double s_high = oracle::fit_slope(hx, hn);
  Verdict v;
  v.pass = std::abs(s_qfi + 2.0) <= 0.05 && std::abs(s_low + 0.5) <= 0.05 && std::abs(s_high - 0.5) <= 0.05;
  v.detail = "QFI vs 1-x " + fmt(s_qfi, 4) + " (want -2 +/- 0.05), <n> vs 1-x " + fmt(s_low, 4) +
             " (want -0.5), high <n> vs x " + fmt(s_high, 4) + " (want +0.5)";
  return v;
}

Verdict full_rabi() {
  const double target = fock::mean_excitations(fock::squeezing_parameter(Sector::low, 0.5)).exact;
  std::vector<double> errors;
  std::string values;
  for (double Omega : {50.0, 200.0, 1000.0}) {
    const auto m = models::build(ModelSpec::rabi(1.0, Omega, 0.5, 80));
    const double n = expectation(m.dH_domega(), m.spectrum().ground_state());
    errors.push_back(std::abs(n - target));
    values += fmt(n, 7) + " ";
  }
  Verdict v;
  v.pass = errors[0] > errors[1] && errors[1] > errors[2] && errors[2] < 0.01 * target;
  v.detail = "<n> at Omega=50,200,1000: " + values + "-> sinh^2 xi = " + fmt(target, 7) +
             ", errors " + fmt(errors[0], 3) + " " + fmt(errors[1], 3) + " " + fmt(errors[2], 3);
  return v;
}

const std::vector<sweep::SweepFamily> kSweeps = {
    sweep::SweepFamily::effective, sweep::SweepFamily::lmg, sweep::SweepFamily::tfim,
    sweep::SweepFamily::tfim_transverse};

std::string golden_path(const std::string& dir, sweep::SweepFamily f) {
  return dir + "/" + std::string(sweep::sweep_family_name(f)) + ".csv";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Verdict reproducibility(const std::string& golden_dir) {
  Verdict v;
  for (auto family : kSweeps) {
    const auto config = sweep::SweepConfig::defaults(family);
    Timer timer;
    const std::string csv = sweep::to_csv(sweep::run_sweep(config), config);
    const double elapsed = timer.seconds();
    const std::string golden = read_file(golden_path(golden_dir, family));
    const bool same = !golden.empty() && csv == golden;
    v.pass = v.pass && same && elapsed < 120.0;
    v.detail += std::string(sweep::sweep_family_name(family)) + " " + fmt(elapsed, 3) + " s " +
                (golden.empty() ? "no golden" : same ? "identical" : "DIFFERS") + "; ";
  }
  v.detail.resize(v.detail.size() - 2);
  return v;
}

int write_golden(const std::string& dir) {
  for (auto family : kSweeps) {
    const auto config = sweep::SweepConfig::defaults(family);
    const std::string path = golden_path(dir, family);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << sweep::to_csv(sweep::run_sweep(config), config);
    if (!out) {
      std::cerr << "cannot write " << path << '\n';
      return 1;
    }
    std::cout << "wrote " << path << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::string golden_dir;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--write-golden") return write_golden(argv[i + 1]);
    if (flag == "--golden") golden_dir = argv[i + 1];
  }
  if (golden_dir.empty()) {
    std::cerr << "usage: acceptance --golden DIR | --write-golden DIR\n";
    return 2;
  }

  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"critical-side QFI closure", critical_side},
      {"anti-critical QFI closure and plateau", anti_critical_side},
      {"variance identity", variance_identity},
      {"phase-imprint QFI", phase_imprint},
      {"constant-hamiltonian adiabatic oracle", constant_ramp},
      {"QFI sandwich bound", sandwich},
      {"chain symmetry pair", symmetry_pair},
      {"scaling slopes", scaling_slopes},
      {"full Rabi consistency", full_rabi},
      {"sweep reproducibility", [&] { return reproducibility(golden_dir); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << ": "
              << v.detail << std::endl;
  }
  std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
