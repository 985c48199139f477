#pragma once

#include <iosfwd>

namespace tomkit::cli {

/// Runs one command. Exit 0 when the verdict is true or the command
/// succeeded, 1 when the verdict is false (violations on out), 2 on input or
/// usage errors (message on err).
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace tomkit::cli
