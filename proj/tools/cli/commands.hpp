#pragma once

#include <iosfwd>

namespace autoglosh::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;

/// Entry point for `autoglosh <pipeline|generate|evaluate> ...`. Returns the
/// process exit code; errors go to `err` as a one-line JSON object.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace autoglosh::cli
