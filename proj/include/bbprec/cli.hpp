#pragma once

#include <iosfwd>

namespace bbprec::cli {

/// Entry point of the `bbprec` command. Returns the process exit code:
/// 0 success, 1 input or usage error, 2 analysis finished with a model
/// degeneracy diagnostic.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bbprec::cli
