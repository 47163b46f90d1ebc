#include <doctest.h>

#include <stdexcept>

#include "anticrit/config.hpp"

using namespace anticrit;

TEST_CASE("template parses back to the defaults") {
  const std::string text = emit_config_template();
  const Settings parsed = parse_config(text);
  CHECK(emit_config(parsed) == text);
  CHECK(parsed.tol.n_max_default == Tolerances{}.n_max_default);
  CHECK(parsed.tol.degeneracy_gap == Tolerances{}.degeneracy_gap);
  CHECK(parsed.grid_chain == "-3:3:121");
}

TEST_CASE("round trip keeps modified values") {
  Settings s;
  s.omega = 2.5;
  s.tol.fd_step_rel = 3e-6;
  s.chain_N = 8;
  s.fd_chains = true;
  s.grid_lmg = "0:0.5:11";
  const Settings back = parse_config(emit_config(s));
  CHECK(back.omega == 2.5);
  CHECK(back.tol.fd_step_rel == 3e-6);
  CHECK(back.chain_N == 8);
  CHECK(back.fd_chains);
  CHECK(back.grid_lmg == "0:0.5:11");
  CHECK(emit_config(back) == emit_config(s));
}

TEST_CASE("partial files layer over the base") {
  Settings base;
  base.lmg_N = 50;
  const Settings s = parse_config("omega = 3   # comment\n\n  jobs=2\n", base);
  CHECK(s.omega == 3.0);
  CHECK(s.jobs == 2);
  CHECK(s.lmg_N == 50);
}

TEST_CASE("malformed input") {
  CHECK_THROWS_AS(parse_config("bogus = 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("omega 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("omega = one\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("lmg_N = 2.5\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("fd_chains = yes\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("omega = 1\nomega = 2\n"), std::invalid_argument);
  CHECK_THROWS_AS(load_config("/nonexistent/anticrit.conf"), std::invalid_argument);
}
