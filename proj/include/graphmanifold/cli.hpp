#pragma once

// The gmtool command line, callable in-process.
//
// Exit codes: 0 success / pass, 1 invalid manifold, 2 parse or usage error,
// 3 criterion refuted, 4 criterion not applicable, 5 stage precondition
// failed, 6 internal assertion failed.

#include <iosfwd>
#include <string>
#include <vector>

namespace gm {

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalid = 1,
  kExitUsage = 2,
  kExitRefuted = 3,
  kExitNotApplicable = 4,
  kExitPrecondition = 5,
  kExitAssertion = 6,
};

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace gm
