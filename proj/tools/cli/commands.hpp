#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hdsphere::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitValidationBase = 9;  ///< exit = base + failed criteria, capped
inline constexpr int kExitCap = 125;

/// Exit status for `failed` failing criteria: 0 when none, otherwise
/// min(125, 9 + failed), so any failure maps to 10 or above.
int validation_exit_code(int failed);

/// Entry point shared by the executable and the tests. args excludes argv[0].
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hdsphere::cli
