#pragma once

#include <iosfwd>
#include <string>

#include "heiscr/config.hpp"

namespace heiscr::cli {

/// Subcommand entry points. Each writes its report to `out` (or to
/// cfg.out when set), diagnostics to `err`, and returns the process exit
/// code: 0 all checks pass, 1 check failure, 2 usage/config error.
int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_curvature(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_ccdist(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_quotient(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_flow(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_cone(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Render a verify document to a string (used for determinism checks).
std::string verify_json(const RunConfig& cfg);

} // namespace heiscr::cli
