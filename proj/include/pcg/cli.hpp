#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace pcg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand (query, sample, dsep, ci, learn, check, discount).
/// `args` excludes the program name. Results go to `out`, diagnostics to
/// `err`. Returns 0 on success, 1 on a domain error (or a non-empty check
/// report), 2 on a usage error.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

} // namespace pcg::cli
