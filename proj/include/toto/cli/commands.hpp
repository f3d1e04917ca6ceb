#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace toto::cli {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  /// table --tolerance found cells outside the tolerance.
  kExitRegression = 1,
  /// Invalid arguments or bound ordering.
  kExitInvalidInput = 2,
  /// A solution failed validation or was falsified by the oracle.
  kExitValidation = 3,
  kExitIo = 4,
};

/// Entry point shared by the executable and the tests. args excludes the
/// program name. Output goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct GridRange {
  double first = 0.0;
  double last = 0.0;
  int steps = 1;

  double at(int i) const;
};

/// Parses "a:b:steps"; throws std::invalid_argument on malformed input.
GridRange parse_range(const std::string& text);

}  // namespace toto::cli
