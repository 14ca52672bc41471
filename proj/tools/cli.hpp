#pragma once

#include <chuxcorr/numtheory.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace chuxcorr::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kUsage = 2,
};

/// Largest sequence length the CLI accepts.
inline constexpr Int kMaxLength = 10'000'000;

/// Runs the command line `args` (without the program name). Tables go to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace chuxcorr::cli
