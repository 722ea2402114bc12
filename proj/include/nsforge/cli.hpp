#pragma once

// Command-line front end. Exit codes: 0 success, 1 usage or input error,
// 2 computation error, 3 mismatch found by --verify.

#include <iosfwd>
#include <string>
#include <vector>

namespace nsforge::cli {

inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kComputation = 2;
inline constexpr int kMismatch = 3;

/// args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace nsforge::cli
