#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "wma/config.hpp"

namespace wma {

enum ExitCode : int { exit_ok = 0, exit_failure = 1, exit_config = 2, exit_refused = 3 };

/// max |u - u*| over the active points and the boundary traces.
double solution_error(const DiscreteField& field, const Grid& grid, const ScalarField& exact);

struct SolveOutcome {
  int exit_code = exit_ok;
  nlohmann::json report;
  std::vector<std::filesystem::path> artifacts;
};

/// Runs the continuation at every configured resolution, writes dumps and reports
/// into output_dir and returns the JSON report. Progress goes to `log`.
SolveOutcome run_solve(const RunConfig& config, std::ostream& log);

/// Pinching report and strip parameters of the configured domain.
nlohmann::json domain_report(const DomainSpec& domain);

}  // namespace wma
