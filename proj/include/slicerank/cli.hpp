#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace slicerank::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2, kPartial = 3 };

// Runs one command line (without the program name). Certificates and tables
// go to `out` or to the --output file, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace slicerank::cli
