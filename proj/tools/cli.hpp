#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace thma::cli {

enum ExitCode : int {
  kOk = 0,
  kAxiomViolation = 1,
  kParseError = 2,
  kBudgetExceeded = 3,
  kHypothesisFails = 4,
  kSoundnessAlarm = 5,
};

/// Runs one invocation; args excludes the program name. The report goes to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace thma::cli
