#include <doctest.h>

#include <cmath>
#include <numbers>

#include "anticrit/errors.hpp"
#include "anticrit/models.hpp"
#include "anticrit/qfi.hpp"
#include "oracles.hpp"

using namespace anticrit;
using namespace anticrit::qfi;
using models::ModelSpec;

namespace {

RampSpec constant_ramp(double x, double T, int steps = 1001) {
  RampSpec r;
  r.x_start = r.x_end = x;
  r.T = T;
  r.steps = steps;
  r.schedule = Schedule::constant;
  return r;
}

}  // namespace

TEST_CASE("zero duration") {
  CHECK(adiabatic_generator(ModelSpec::effective(Sector::low, 1.0, 0.25), constant_ramp(0.25, 0.0)).value == 0.0);
}

TEST_CASE("constant hamiltonian against the closed form") {
  const auto base = ModelSpec::effective(Sector::low, 1.0, 0.25);
  const double period = 2 * std::numbers::pi / (2 * std::sqrt(0.75));

  for (double T : {1.0, 2.5, 7.0}) {
    CAPTURE(T);
    const auto r = adiabatic_generator(base, constant_ramp(0.25, T));
    const int n_max = static_cast<int>(r.diagnostics.at("n_max"));
    const Eigen::MatrixXd h = oracle::effective_by_products(1.0, base.Omega, base.g, -1, n_max);
    const Eigen::MatrixXd dh = Eigen::VectorXd::LinSpaced(n_max + 1, 0, n_max).asDiagonal();
    const double ref = oracle::constant_ramp_qfi(h, dh, T);
    CHECK(std::abs(r.value - ref) / ref < 1e-4);
    CHECK(r.diagnostics.at("berry_max") < 1e-10);
  }

  const auto zero = adiabatic_generator(base, constant_ramp(0.25, period));
  CHECK(std::abs(zero.value) < 1e-6);
}

TEST_CASE("linear ramp converges under step refinement") {
  RampSpec r;
  r.x_start = 0.0;
  r.x_end = 0.5;
  r.T = 20.0;
  r.steps = 1001;
  const auto base = ModelSpec::effective(Sector::low, 1.0, 0.0, 60);
  const auto coarse = adiabatic_generator(base, r);
  r.steps = 4001;
  const auto fine = adiabatic_generator(base, r);
  // trapezoid error is second order in the node spacing
  CHECK(std::abs(coarse.value - fine.value) / fine.value < 1e-3);
  CHECK(coarse.value > 0.0);
  CHECK(coarse.diagnostics.at("min_gap") == doctest::Approx(std::sqrt(0.5)).epsilon(1e-6));
}

TEST_CASE("spin ramp") {
  RampSpec r;
  r.x_start = 0.0;
  r.x_end = 0.5;
  r.T = 10.0;
  const auto res = adiabatic_generator(ModelSpec::lmg(1.0, 0.0, 20), r);
  CHECK(res.value > 0.0);
  CHECK(std::isfinite(res.value));
}

TEST_CASE("guards") {
  const auto base = ModelSpec::effective(Sector::low, 1.0, 0.25);
  SUBCASE("under-resolved quadrature") {
    CHECK_THROWS_AS(adiabatic_generator(base, constant_ramp(0.25, 200.0, 11)), ConvergenceGuard);
  }
  SUBCASE("gap below tolerance") {
    Tolerances tol;
    tol.adiabatic_gap = 5.0;
    CHECK_THROWS_AS(adiabatic_generator(base, constant_ramp(0.25, 1.0), tol), GapGuard);
  }
  SUBCASE("ramp into the critical point") {
    RampSpec r;
    r.x_start = 0.5;
    r.x_end = 1.0;
    CHECK_THROWS_AS(adiabatic_generator(base, r), CriticalPointGuard);
  }
  SUBCASE("invalid ramps") {
    RampSpec r = constant_ramp(0.25, 1.0, 5);
    CHECK_THROWS_AS(r.validate(), std::invalid_argument);
    r = constant_ramp(0.25, 1.0);
    r.x_end = 0.3;
    CHECK_THROWS_AS(r.validate(), std::invalid_argument);
    r = constant_ramp(0.25, -1.0);
    CHECK_THROWS_AS(r.validate(), std::invalid_argument);
  }
}
