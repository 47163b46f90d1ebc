#include "anticrit/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "anticrit/format.hpp"

namespace anticrit {

namespace {

struct Entry {
  const char* key;
  const char* comment;
  std::function<std::string(const Settings&)> get;
  std::function<void(Settings&, std::string_view)> set;
};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
    throw std::invalid_argument("config key '" + std::string(key) + "': not a number: '" +
                                std::string(v) + "'");
  }
  return out;
}

long long to_integer(std::string_view key, std::string_view v) {
  long long out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
    throw std::invalid_argument("config key '" + std::string(key) + "': not an integer: '" +
                                std::string(v) + "'");
  }
  return out;
}

bool to_bool(std::string_view key, std::string_view v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw std::invalid_argument("config key '" + std::string(key) + "': expected true or false");
}

#define REAL(field)                                                                 \
  [](const Settings& s) { return format_double(s.field); },                         \
      [](Settings& s, std::string_view v) { s.field = to_double(#field, v); }
#define INTEGER(field, type)                                                        \
  [](const Settings& s) { return std::to_string(s.field); },                        \
      [](Settings& s, std::string_view v) { s.field = static_cast<type>(to_integer(#field, v)); }
#define FLAG(field)                                                                 \
  [](const Settings& s) { return std::string(s.field ? "true" : "false"); },        \
      [](Settings& s, std::string_view v) { s.field = to_bool(#field, v); }
#define TEXT(field)                                                                 \
  [](const Settings& s) { return s.field; },                                        \
      [](Settings& s, std::string_view v) { s.field = std::string(v); }

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = {
      {"omega", "oscillator / spin frequency, the unit of energy", REAL(omega)},
      {"omega_ratio", "Omega / omega used when --Omega is not given", REAL(omega_ratio)},
      {"n_max", "starting Fock cutoff for bosonic models", INTEGER(tol.n_max_default, int)},
      {"n_max_cap", "largest Fock cutoff reached by automatic doubling", INTEGER(tol.n_max_cap, int)},
      {"lmg_N", "spin count for the LMG model", INTEGER(lmg_N, int)},
      {"chain_N", "spin count for the chain models", INTEGER(chain_N, int)},
      {"jobs", "worker threads for sweeps (0 = all available)", INTEGER(jobs, int)},
      {"fd_chains", "evaluate the finite-difference QFI in chain sweeps", FLAG(fd_chains)},
      {"grid_effective", "effective sweep grid over x_signed, start:stop:count", TEXT(grid_effective)},
      {"grid_lmg", "LMG sweep grid over g/g_c", TEXT(grid_lmg)},
      {"grid_chain", "chain sweep grid over g/g_c", TEXT(grid_chain)},
      {"adiabatic_steps", "quadrature nodes along an adiabatic ramp", INTEGER(adiabatic_steps, int)},
      {"hermiticity_tol", "max |H - H^dagger| relative to max |H|", REAL(tol.hermiticity)},
      {"norm_tol", "allowed deviation of a state norm from 1", REAL(tol.norm)},
      {"max_dim", "largest matrix dimension accepted by the eigensolver", INTEGER(tol.max_dim, std::size_t)},
      {"cluster_tol", "eigenvalue spacing treated as degenerate", REAL(tol.degenerate_cluster)},
      {"truncation_tol", "max ground-state weight on the top two Fock levels", REAL(tol.truncation_population)},
      {"critical_margin", "low sector requires x < 1 - critical_margin", REAL(tol.critical_margin)},
      {"degeneracy_tol", "spectral-sum QFI refuses gaps at or below this", REAL(tol.degeneracy_gap)},
      {"fd_step_rel", "finite-difference step in units of omega", REAL(tol.fd_step_rel)},
      {"richardson_rel", "max relative QFI shift when halving the step", REAL(tol.richardson_rel)},
      {"richardson_abs", "absolute floor for the step-halving check", REAL(tol.richardson_abs)},
      {"adiabatic_gap_tol", "smallest instantaneous gap allowed along a ramp", REAL(tol.adiabatic_gap)},
      {"adiabatic_convergence_tol", "max relative shift when halving ramp nodes", REAL(tol.adiabatic_convergence)},
      {"adiabatic_abs", "absolute floor for the ramp-halving check", REAL(tol.adiabatic_abs)},
      {"berry_tol", "max imaginary Berry connection along a real ramp", REAL(tol.berry)},
      {"convergence_tol", "relative change flagging truncation non-convergence", REAL(tol.convergence_rel)},
      {"critical_exclusion", "low-sector sweeps skip |x - 1| at or below this", REAL(tol.critical_exclusion)},
  };
  return table;
}

#undef REAL
#undef INTEGER
#undef FLAG
#undef TEXT

}  // namespace

std::string emit_config(const Settings& settings) {
  std::string out = "# anticrit configuration: one key = value per line, # starts a comment.\n";
  for (const Entry& e : entries()) {
    out += "\n# ";
    out += e.comment;
    out += '\n';
    out += e.key;
    out += " = ";
    out += e.get(settings);
    out += '\n';
  }
  return out;
}

Settings parse_config(std::string_view text, const Settings& base) {
  Settings s = base;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const Entry* match = nullptr;
    for (const Entry& e : entries()) {
      if (key == e.key) match = &e;
    }
    if (!match) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": unknown key '" +
                                  std::string(key) + "'");
    }
    if (!seen.emplace(key).second) {
      throw std::invalid_argument("config key '" + std::string(key) + "' given twice");
    }
    match->set(s, value);
  }
  return s;
}

Settings load_config(const std::string& path, const Settings& base) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot read config file " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_config(buf.str(), base);
}

}  // namespace anticrit
