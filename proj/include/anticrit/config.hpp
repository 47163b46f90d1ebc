#pragma once

#include <string>
#include <string_view>

#include "anticrit/tolerances.hpp"

namespace anticrit {

// Flat key = value configuration shared by the CLI subcommands. Command-line
// flags override values read from a file; both override these defaults.
struct Settings {
  Tolerances tol;
  double omega = 1.0;
  double omega_ratio = 1000.0;  // Omega / omega when --Omega is not given
  int lmg_N = 200;
  int chain_N = 10;
  int jobs = 0;
  bool fd_chains = false;
  std::string grid_effective = "-16:0.95:200";
  std::string grid_lmg = "0:0.98:100";
  std::string grid_chain = "-3:3:121";
  int adiabatic_steps = 1001;
};

// Commented template listing every key with its current value.
std::string emit_config(const Settings& settings);
inline std::string emit_config_template() { return emit_config(Settings{}); }

// Applies `text` on top of `base`. Throws std::invalid_argument on unknown
// keys, malformed lines or unparsable values.
Settings parse_config(std::string_view text, const Settings& base = {});
Settings load_config(const std::string& path, const Settings& base = {});

}  // namespace anticrit
