#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vucfm::cli {

// Process exit statuses; the most severe failing stage wins.
enum ExitStatus : int {
  kSuccess = 0,
  kValidationErrors = 1,
  kParseErrors = 2,
  kDerivationError = 3,
  kUsageError = 4,
};

/**
 * Runs one `vucfm-kit` invocation. `args` excludes the program name.
 *
 *   check FILE
 *   derive family FILE --feature PATH [-o OUT]
 *   derive specific FILE --revision PATH [-o OUT]
 *   export FILE --format dot|puml [-o OUT] [--clusters]
 *   configs FILE (--count | --list) [--limit N]
 *   list FILE --kind usecase|version|revision|actor|feature
 *
 * Diagnostics go to `err`; listings, and artifacts written to `-`, go to `out`.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vucfm::cli
