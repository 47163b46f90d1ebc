#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "anticrit/config.hpp"
#include "anticrit/format.hpp"
#include "anticrit/models.hpp"
#include "anticrit/qfi.hpp"
#include "cli.hpp"

using namespace anticrit;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::string temp_path(const std::string& name) {
  return (std::filesystem::path(ANTICRIT_TEST_TMP) / name).string();
}

}  // namespace

TEST_CASE("analytic QFI") {
  const auto r = invoke({"qfi", "--family", "effective_low", "--x", "0.25", "--method", "analytic"});
  CHECK(r.code == 0);
  CHECK(std::stod(r.out) == doctest::Approx(0.0138889).epsilon(1e-6));
  CHECK(r.out == format_double(qfi::analytic_squeezed(Sector::low, 1.0, 0.25).value) + "\n");
}

TEST_CASE("gap of lmg at g=0") {
  const auto r = invoke({"gap", "--family", "lmg", "--N", "200", "--g", "0"});
  CHECK(r.code == 0);
  CHECK(std::stod(r.out) == 1.0);
}

TEST_CASE("critical point exits 3") {
  const auto r = invoke({"qfi", "--family", "effective_low", "--x", "1.0", "--method", "analytic"});
  CHECK(r.code == 3);
  CHECK(r.err.find("CriticalPointGuard") != std::string::npos);
  CHECK(r.out.empty());
}

TEST_CASE("usage errors exit 2 with one line") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"frobnicate"},
           {"qfi", "--bogus"},
           {"qfi", "--family", "ising"},
           {"qfi", "--x", "0.2", "--g", "1"},
           {"qfi", "--method", "magic"},
           {"qfi", "--x", "abc"},
           {"sweep", "--family", "lmg"},
           {"converge", "--levels", "10,10"},
           {}}) {
    const auto r = invoke(args);
    CHECK(r.code == 2);
    CHECK(r.err.find('\n') == r.err.size() - 1);
  }
}

TEST_CASE("spectral sum through the CLI equals the library value") {
  const auto r = invoke({"qfi", "--family", "effective_high", "--x", "4", "--verbose"});
  CHECK(r.code == 0);
  const auto lib = qfi::spectral_sum(models::build(models::ModelSpec::effective(Sector::high, 1.0, 4.0)));
  CHECK(first_line(r.out) == format_double(lib.value));
  CHECK(r.out.find("method=spectral_sum\n") != std::string::npos);
  CHECK(r.out.find("gap01=" + format_double(lib.diagnostics.at("gap01")) + "\n") != std::string::npos);
  CHECK(invoke({"qfi", "--family", "effective_high", "--x", "4", "--verbose"}).out == r.out);
}

TEST_CASE("other estimators") {
  CHECK(invoke({"qfi", "--family", "effective_low", "--x", "0.25", "--method", "state_fd"}).code == 0);
  const auto osc = invoke({"qfi", "--family", "effective_low", "--x", "0.75", "--method", "oscillator",
                           "--var-c", "1", "--t", "1"});
  CHECK(osc.code == 0);
  CHECK(std::stod(osc.out) == doctest::Approx(6.25));
  CHECK(invoke({"qfi", "--family", "lmg", "--N", "20", "--g", "0.3", "--method", "phase_imprint"}).code == 0);
  const auto degen = invoke({"qfi", "--family", "tfim", "--N", "4", "--g", "0.5"});
  CHECK(degen.code == 0);
}

TEST_CASE("degenerate ground state exits 3") {
  // omega -> 0 limit: a tiny field leaves the ferromagnetic doublet split far below 1e-9
  const auto r = invoke({"qfi", "--family", "tfim", "--N", "10", "--omega", "1e-3", "--g", "1"});
  CHECK(r.code == 3);
  CHECK(r.err.find("DegeneracyGuard") != std::string::npos);
}

TEST_CASE("adiabatic and converge subcommands") {
  const auto a = invoke({"adiabatic", "--family", "effective_low", "--x-start", "0.25", "--x-end", "0.25",
                         "--T", "2", "--schedule", "constant", "--verbose"});
  CHECK(a.code == 0);
  CHECK(a.out.find("method=adiabatic_generator") != std::string::npos);
  const auto c = invoke({"converge", "--family", "effective_low", "--x", "0.25", "--levels", "20,40,80"});
  CHECK(c.code == 0);
  CHECK(first_line(c.out) == "n_max,ground_energy,gap,mean_n,converged");
}

TEST_CASE("config file layering") {
  const std::string path = temp_path("layer.conf");
  {
    std::ofstream f(path);
    f << "omega = 2\nlmg_N = 10\n";
  }
  const auto from_file = invoke({"gap", "--family", "lmg", "--g", "0", "--config", path});
  CHECK(from_file.code == 0);
  CHECK(std::stod(from_file.out) == doctest::Approx(2.0));
  const auto override_flag = invoke({"gap", "--family", "lmg", "--g", "0", "--omega", "3", "--config", path});
  CHECK(std::stod(override_flag.out) == doctest::Approx(3.0));

  const std::string bad = temp_path("bad.conf");
  {
    std::ofstream f(bad);
    f << "not_a_key = 1\n";
  }
  const auto r = invoke({"gap", "--family", "lmg", "--config", bad});
  CHECK(r.code == 2);

  const auto t = invoke({"config-template"});
  CHECK(t.code == 0);
  CHECK(t.out == emit_config_template());
}

TEST_CASE("sweep writes csv and sidecar") {
  const std::string path = temp_path("cli_sweep.csv");
  const auto r = invoke({"sweep", "--family", "lmg", "--N", "10", "--grid", "0:0.5:3", "--out", path,
                         "--no-fd"});
  REQUIRE(r.code == 0);
  std::ifstream csv(path);
  std::string header;
  std::getline(csv, header);
  CHECK(header.rfind("g_over_gc,x,gap01", 0) == 0);
  CHECK(std::filesystem::exists(path + ".meta.json"));
  const auto again = invoke({"sweep", "--family", "lmg", "--N", "10", "--grid", "0:0.5:3", "--out",
                             temp_path("cli_sweep2.csv"), "--no-fd", "--jobs", "2"});
  CHECK(again.code == 0);
  std::ifstream a(path), b(temp_path("cli_sweep2.csv"));
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
}

TEST_CASE("version") {
  const auto r = invoke({"version"});
  CHECK(r.code == 0);
  CHECK(r.out == std::string("anticrit ") + ANTICRIT_VERSION + "\n");
}
