#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace uebkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitInputError = 2;

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Subcommands: classify, sweep, demo-trit, verify, generate.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace uebkit::cli
