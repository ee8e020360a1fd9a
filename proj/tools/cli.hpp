#pragma once

#include <iosfwd>

namespace xcsp3kit::cli {

enum Exit { kOk = 0, kReject = 1, kUsage = 2, kInternal = 3 };

// argv[0] is the program name; output goes to out, diagnostics to err
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace xcsp3kit::cli
