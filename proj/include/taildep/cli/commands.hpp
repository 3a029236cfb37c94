#pragma once

#include <string>
#include <vector>

#include "taildep/cli/config.hpp"
#include "taildep/cli/report.hpp"

namespace taildep::cli {

// Each command takes the merged configuration (file plus flag overrides) and
// returns a report embedding the resolved configuration. Unknown keys are
// configuration errors.
Report run_bounds(const Json& config);
Report run_simulate(const Json& config);
Report run_tailcc(const Json& config);
Report run_memory(const Json& config);
Report run_fit(const Json& config);
Report run_dip(const Json& config);
Report run_changepoint(const Json& config);
Report run_pipeline(const Json& config);

Report run_command(const std::string& command, const Json& config);
const std::vector<std::string>& command_names();

// Exit codes: 0 success, 2 configuration, 3 data, 4 numerical failure in a
// required section.
int exit_code_for(const Error& error);
int run_cli(int argc, char** argv);

}  // namespace taildep::cli
