#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace weillift::cli {

// Name of the environment variable holding the default work budget.
inline constexpr const char* kBudgetEnv = "WEILLIFT_WORK_BUDGET";

// args excludes the program name. JSON goes to `out`, diagnostics to `err`.
// Exit codes: 0 ok, 2 validation or usage error, 3 work budget exhausted, 1 internal error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace weillift::cli
