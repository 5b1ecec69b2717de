#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mtss::cli {

enum ExitCode : int {
  kSuccess = 0,
  kFindings = 1,
  kUsage = 2,
  kParseFailure = 3,
};

struct Environment {
  bool strict = false;  ///< MTSS_STRICT=1
};

Environment environment_from_process();

/// Runs one invocation. args excludes the program name. Payload goes to out,
/// diagnostics and chatter to err.
int dispatch(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
             const Environment& env = {});

}  // namespace mtss::cli
