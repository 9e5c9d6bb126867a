#pragma once

#include <iosfwd>

namespace ccnet::cli {

// Runs the exact-identity suite, printing one line per check; stops at the
// first failing check. Returns true when every check passed.
bool run_verify_suite(bool quick, std::ostream& out);

}  // namespace ccnet::cli
