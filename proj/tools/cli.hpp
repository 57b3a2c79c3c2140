#pragma once

#include <iosfwd>

namespace k3zd {

/// Exit codes: 0 success, 1 usage error, 2 invalid input,
/// 3 internal inconsistency detected.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace k3zd
