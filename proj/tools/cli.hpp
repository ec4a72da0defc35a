#pragma once

#include <ostream>

namespace bispec::cli {

// Runs one subcommand. Returns 0 on success, 2 on usage errors, 1 on computation errors.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bispec::cli
