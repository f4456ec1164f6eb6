#include "heiscr/report.hpp"

namespace heiscr::cli {

const std::vector<std::string>& convention_notes() {
  static const std::vector<std::string> notes = {
      "normalization: eta(X_ii) = x_i^2 + y_i^2 for the torus generators; the cone is "
      "parametrized by xi_a = xi + sum_i a_i X_ii with a_i >= 0, eta_a = eta / (1 + sum_i a_i "
      "(x_i^2 + y_i^2)), and the Reeb flow rotates block i at angular rate 2 a_i",
      "metrics: g is the unweighted-recipe contact metric d(eta) o (Phi (x) 1) + eta (x) eta and "
      "carries lengths and Carnot-Caratheodory distances; curvature statements use the "
      "Sasaki-normalized companion g_sasaki = (g + eta (x) eta)/2, the rescaling for which "
      "R(X,xi)xi = X and the standard structure has Phi-sectional curvature -3 and scalar -2n",
      "scalar curvature closed form: calibrated coefficients measure c0 = 16(n+1)|a| - 2n and "
      "c_i = -8(n+1)(n+2) a_i^2 against the moment components h_i = (x_i^2+y_i^2) eta-weight; "
      "the commonly printed constants 2n(4|a|-1) and -n(2n+7) a_i^2 do not match under this or "
      "any rescaling we tested and are emitted alongside for comparison",
  };
  return notes;
}

nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["checks"] = static_cast<int>(r.records.size());
  j["passed"] = r.passed();
  j["failed"] = r.failed();
  nlohmann::ordered_json recs = nlohmann::ordered_json::array();
  for (auto& c : r.records) {
    nlohmann::ordered_json rec;
    rec["id"] = c.id;
    rec["inputs"] = c.inputs;
    rec["expected"] = c.expected;
    rec["observed"] = c.observed;
    rec["residual"] = c.residual;
    rec["tolerance"] = c.tolerance;
    rec["provenance"] = c.provenance;
    rec["pass"] = c.pass;
    recs.push_back(rec);
  }
  j["records"] = recs;
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

nlohmann::ordered_json reports_document(const std::vector<Report>& rs, uint64_t seed,
                                        const nlohmann::ordered_json& config_echo) {
  nlohmann::ordered_json doc;
  doc["schema"] = 1;
  doc["seed"] = seed;
  doc["config"] = config_echo;
  doc["convention_ledger"] = convention_notes();
  int checks = 0, passed = 0;
  nlohmann::ordered_json suites = nlohmann::ordered_json::array();
  for (auto& r : rs) {
    suites.push_back(to_json(r));
    checks += static_cast<int>(r.records.size());
    passed += r.passed();
  }
  doc["suites"] = suites;
  doc["summary"] = {{"checks", checks}, {"passed", passed}, {"failed", checks - passed}};
  return doc;
}

} // namespace heiscr::cli
