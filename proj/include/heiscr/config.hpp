#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace heiscr::cli {

/// Run configuration shared by all subcommands. Populated from an optional
/// line-oriented "key = value" file, then overridden by flags; the seed can
/// also arrive through HEISCR_SEED (flags win).
struct RunConfig {
  int n = 1;
  std::string model = "right";
  std::vector<double> a;
  uint64_t seed = 20240817;
  int samples = 100;
  double tol = 1e-8;
  double box = 2.0;
  double box_z = 2.0;
  int resolution = 64;
  int stencil = 3;
  std::optional<long long> lattice_k;
  std::vector<long long> lattice_l;
  std::vector<double> L_schedule = {1.0, 10.0, 100.0, 1000.0};
  double a0 = 1.0; // cone command: coefficient of xi
  std::string out;
  std::string format = "json";

  void validate() const; // throws std::invalid_argument on bad values
};

/// Parse "key = value" lines ('#' comments, blank lines ignored). Unknown
/// keys are an error. Returns the keys that were set.
std::vector<std::string> load_config_file(const std::string& path, RunConfig& cfg);

std::vector<double> parse_double_list(const std::string& csv);
std::vector<long long> parse_int_list(const std::string& csv);

} // namespace heiscr::cli
