#pragma once

#include <ostream>

namespace dirac::cli {

// Exit codes: 0 success, 2 validation error (bad flags, bad input files), 1 internal failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dirac::cli
