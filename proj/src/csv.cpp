#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "anticrit/format.hpp"
#include "anticrit/sweep.hpp"

namespace anticrit {

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // folds -0 into +0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc{}) throw std::runtime_error("float formatting failed");
  return std::string(buf, res.ptr);
}

namespace sweep {

std::string to_csv(const std::vector<SweepRow>& rows, const SweepConfig& config) {
  const std::vector<std::string> columns =
      config.columns.empty() ? default_columns(config.family) : config.columns;
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c) out += ',';
    out += columns[c];
  }
  out += '\n';
  for (const SweepRow& row : rows) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c) out += ',';
      if (columns[c] == "status") {
        out += row.status;
        continue;
      }
      const std::optional<double> v = row.column(columns[c]);
      if (v && std::isfinite(*v)) out += format_double(*v);
    }
    out += '\n';
  }
  return out;
}

std::string metadata_json(const std::vector<SweepRow>& rows, const SweepConfig& config) {
  using nlohmann::ordered_json;
  const Tolerances& t = config.tol;
  ordered_json tol = {
      {"hermiticity", t.hermiticity},
      {"norm", t.norm},
      {"max_dim", t.max_dim},
      {"degenerate_cluster", t.degenerate_cluster},
      {"truncation_population", t.truncation_population},
      {"n_max_default", t.n_max_default},
      {"n_max_cap", t.n_max_cap},
      {"critical_margin", t.critical_margin},
      {"degeneracy_gap", t.degeneracy_gap},
      {"fd_step_rel", t.fd_step_rel},
      {"richardson_rel", t.richardson_rel},
      {"richardson_abs", t.richardson_abs},
      {"adiabatic_gap", t.adiabatic_gap},
      {"adiabatic_convergence", t.adiabatic_convergence},
      {"adiabatic_abs", t.adiabatic_abs},
      {"berry", t.berry},
      {"convergence_rel", t.convergence_rel},
      {"critical_exclusion", t.critical_exclusion},
  };
  ordered_json truncation = ordered_json::array();
  for (const SweepRow& r : rows) {
    if (r.n_max > 0) {
      truncation.push_back(r.n_max);
    } else {
      truncation.push_back(nullptr);
    }
  }
  ordered_json meta = {
      {"artifact", "anticrit"},
      {"version", ANTICRIT_VERSION},
      {"family", sweep_family_name(config.family)},
      {"omega", config.omega},
      {"omega_ratio", config.omega_ratio},
      {"N", config.N},
      {"n_max", config.n_max},
      {"with_fd", config.with_fd},
      {"jobs", config.jobs},
      {"grid", config.grid.points},
      {"columns", config.columns.empty() ? default_columns(config.family) : config.columns},
      {"rows", rows.size()},
      {"tolerances", tol},
      {"truncation_levels", truncation},
  };
  return meta.dump(2) + "\n";
}

void write_outputs(const std::vector<SweepRow>& rows, const SweepConfig& config,
                   const std::string& path) {
  auto write = [](const std::string& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + p + " for writing");
    f << text;
    if (!f) throw std::runtime_error("write to " + p + " failed");
  };
  write(path, to_csv(rows, config));
  write(path + ".meta.json", metadata_json(rows, config));
}

}  // namespace sweep
}  // namespace anticrit
