#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mmt::cli {

/// Exit codes of run().
inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;  // verification false or identity failed
inline constexpr int kUsage = 2;   // usage, parse or file errors

/// Runs one command. `args` excludes the program name, e.g.
/// {"verify", "--tensor", "builtin:strassen"}. Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mmt::cli
