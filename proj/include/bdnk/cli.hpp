#pragma once

// Library entry point for the command-line surface, testable without a
// process boundary.
//
// Subcommands: check, dispersion, decay, scan, presets.
// Exit codes: 0 certified (or subcommand succeeded), 1 valid model but not
// certified, 2 malformed input (config/preset/arguments), 3 numerical
// failure.

#include <iosfwd>
#include <string>
#include <vector>

namespace bdnk {

inline constexpr int kExitCertified = 0;
inline constexpr int kExitNotCertified = 1;
inline constexpr int kExitBadConfig = 2;
inline constexpr int kExitNumerical = 3;

[[nodiscard]] int cli_main(const std::vector<std::string>& args, std::ostream& out,
                           std::ostream& err);

}  // namespace bdnk
