#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sumnorm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;

/// Entry point shared by the executable and the tests. Returns the process
/// exit code: 0 on success (statistical rejections included), 2 for bad
/// input or configuration.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sumnorm::cli
