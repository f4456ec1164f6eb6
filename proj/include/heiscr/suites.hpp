#pragma once

#include "heiscr/config.hpp"
#include "heiscr/report.hpp"

namespace heiscr::cli {

/// Per-module invariant suites. Numeric-identity checks run at cfg.tol;
/// discretization-level checks (graph oracle accuracy, flow-vs-closed-form
/// agreement) carry their own documented tolerances.
Report suite_tensor(const RunConfig& cfg);
Report suite_heisenberg(const RunConfig& cfg);
Report suite_cr_algebra(const RunConfig& cfg);
Report suite_sasaki_cone(const RunConfig& cfg);
Report suite_subriemannian(const RunConfig& cfg);
Report suite_quotients(const RunConfig& cfg);

std::vector<Report> all_suites(const RunConfig& cfg);

} // namespace heiscr::cli
