#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "divkit/generators.hpp"

namespace divkit::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitUsage = 2;

/// "2..10" (inclusive range) or "2,5,10". Every dimension must lie in [2, 10^6].
/// Throws RejectedInput.
std::vector<std::size_t> parse_dims(std::string_view text);

/// "x_min..x_max:points", e.g. "1e-6..1e6:100000". Spacing is left at its default.
/// Throws RejectedInput.
GridSpec parse_grid(std::string_view text);

/// Runs the command line `args` (without the program name). The report goes to `out`
/// (or the --output file), diagnostics to `err`. Returns 0, 1 or 2.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace divkit::cli
