#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qeac::cli {

/// Runs one command line (args excludes the program name). Returns the
/// process exit code: 0 success, 1 runtime or verification failure, 2 usage
/// error. Errors are reported on `err` as "ErrorName: message".
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qeac::cli
