#pragma once

#include <exception>
#include <iosfwd>
#include <string>
#include <vector>

namespace isolab::cli {

/// Runs one subcommand. `args` excludes the program name. Artifacts go to --output (stdout by
/// default) or, for `branch`, to --output-dir. Returns 0 on success, 1 on an invariant violation,
/// 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 2 for UsageError, 1 for InvariantViolation and any other failure.
int exit_code(const std::exception& e);

}  // namespace isolab::cli
