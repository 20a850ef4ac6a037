#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "schreier/report.hpp"

namespace schreier::cli {

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kUsageError = 2 };

/// Runs one command. `args` excludes the program name. The human report goes
/// to `out`, diagnostics to `err`; when `report` is non-null it receives the
/// machine report (also written to the --json path if given).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, Json* report = nullptr);

}  // namespace schreier::cli
