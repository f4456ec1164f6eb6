#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace heiscr::cli {

/// Provenance of an expected value: "published" (stated in the classical
/// closed forms), "trivial" (definitional), or "derived" (computed by an
/// independent route in this project).
struct CheckRecord {
  std::string id;
  std::string inputs;
  std::string expected;
  double observed = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string provenance; // published | trivial | derived
  bool pass = false;
};

struct Report {
  std::string suite;
  std::vector<CheckRecord> records;
  std::vector<std::string> notes;

  int passed() const {
    int c = 0;
    for (auto& r : records) c += r.pass ? 1 : 0;
    return c;
  }
  int failed() const { return static_cast<int>(records.size()) - passed(); }

  CheckRecord& add(const std::string& id, const std::string& inputs, const std::string& expected,
                   double observed, double residual, double tolerance,
                   const std::string& provenance) {
    CheckRecord r;
    r.id = id;
    r.inputs = inputs;
    r.expected = expected;
    r.observed = observed;
    r.residual = residual;
    r.tolerance = tolerance;
    r.provenance = provenance;
    r.pass = residual <= tolerance;
    records.push_back(r);
    return records.back();
  }
};

/// The normalization conventions this build fixes; embedded verbatim in every
/// emitted report so numeric artifacts are self-describing.
const std::vector<std::string>& convention_notes();

nlohmann::ordered_json to_json(const Report& r);
nlohmann::ordered_json reports_document(const std::vector<Report>& rs, uint64_t seed,
                                        const nlohmann::ordered_json& config_echo);

} // namespace heiscr::cli
