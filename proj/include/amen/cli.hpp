#pragma once

#include <iosfwd>

namespace amen::cli {

/// Runs the `amen` command line. Exit codes: 0 success, 1 parse or IO
/// error, 2 NotAmenable or TooLarge.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace amen::cli
