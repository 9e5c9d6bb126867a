#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ccnet::cli {

// Exit codes: 0 success, 1 an invariant check failed, 2 usage error, 3 domain error.
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDomain = 3;

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ccnet::cli
