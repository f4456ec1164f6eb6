#include "heiscr/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace heiscr::cli {

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

std::vector<long long> parse_int_list(const std::string& csv) {
  std::vector<long long> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoll(item));
  }
  return out;
}

void RunConfig::validate() const {
  if (n < 1 || n > 4) throw std::invalid_argument("config: n must be in 1..4");
  if (model != "right" && model != "left" && model != "intermediate")
    throw std::invalid_argument("config: model must be right|left|intermediate");
  for (double w : a)
    if (w < 0) throw std::invalid_argument("config: cone weights must be nonnegative");
  if (!a.empty() && static_cast<int>(a.size()) != n)
    throw std::invalid_argument("config: need n cone weights");
  if (samples < 1) throw std::invalid_argument("config: samples must be positive");
  if (!(tol > 0)) throw std::invalid_argument("config: tol must be positive");
  if (!(box > 0) || !(box_z > 0)) throw std::invalid_argument("config: box bounds must be positive");
  if (resolution < 8 || resolution % 2 != 0)
    throw std::invalid_argument("config: resolution must be even and >= 8");
  if (lattice_k && *lattice_k < 1) throw std::invalid_argument("config: lattice k must be >= 1");
  for (size_t i = 0; i < lattice_l.size(); ++i) {
    if (lattice_l[i] < 1) throw std::invalid_argument("config: lattice l entries must be >= 1");
    if (i + 1 < lattice_l.size() && lattice_l[i + 1] % lattice_l[i] != 0)
      throw std::invalid_argument("config: lattice l must form a divisibility chain");
  }
  if (lattice_k && !lattice_l.empty())
    throw std::invalid_argument("config: give either lattice k or lattice l, not both");
  for (size_t i = 1; i < L_schedule.size(); ++i)
    if (!(L_schedule[i] > L_schedule[i - 1]))
      throw std::invalid_argument("config: L schedule must increase");
  if (format != "json" && format != "csv")
    throw std::invalid_argument("config: format must be json|csv");
}

std::vector<std::string> load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::vector<std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto notspace = line.find_first_not_of(" \t\r");
    if (notspace == std::string::npos) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: missing '=' at line " + std::to_string(lineno));
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key == "n") {
      cfg.n = std::stoi(val);
    } else if (key == "model") {
      cfg.model = val;
    } else if (key == "a") {
      cfg.a = parse_double_list(val);
    } else if (key == "seed") {
      cfg.seed = std::stoull(val);
    } else if (key == "samples") {
      cfg.samples = std::stoi(val);
    } else if (key == "tol") {
      cfg.tol = std::stod(val);
    } else if (key == "box") {
      cfg.box = std::stod(val);
    } else if (key == "box_z") {
      cfg.box_z = std::stod(val);
    } else if (key == "resolution") {
      cfg.resolution = std::stoi(val);
    } else if (key == "stencil") {
      cfg.stencil = std::stoi(val);
    } else if (key == "lattice_k") {
      cfg.lattice_k = std::stoll(val);
    } else if (key == "lattice_l") {
      cfg.lattice_l = parse_int_list(val);
    } else if (key == "L_schedule") {
      cfg.L_schedule = parse_double_list(val);
    } else if (key == "a0") {
      cfg.a0 = std::stod(val);
    } else if (key == "out") {
      cfg.out = val;
    } else if (key == "format") {
      cfg.format = val;
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "' at line " +
                                  std::to_string(lineno));
    }
    seen.push_back(key);
  }
  return seen;
}

} // namespace heiscr::cli
