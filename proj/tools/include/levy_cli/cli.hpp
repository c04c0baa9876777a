#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace levy::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kDataError = 3 };

/// Runs the levy-calib command line. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace levy::cli
