#pragma once

#include <ostream>

namespace coherex::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;

// Entry point behind the coherex binary. Primary output goes to `out`, logs
// and errors to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace coherex::cli
