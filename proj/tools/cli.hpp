#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace isolab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMalformed = 1;
inline constexpr int kExitModuleError = 2;

inline constexpr int kDefaultPrecision = 40;

// Runs one command. args excludes the program name. Result or error JSON goes
// to `out`, diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Value of ISOLAB_PRECISION, or kDefaultPrecision when unset.
int default_precision();

}  // namespace isolab::cli
