#pragma once

#include <iosfwd>

namespace xnf::cli {

/// Exit codes: 0 success, 1 a check failed, 2 usage or input error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace xnf::cli
