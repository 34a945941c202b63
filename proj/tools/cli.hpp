#pragma once

#include <iosfwd>

namespace flowclust::cli {

// Exit codes: 0 ok, 1 input/configuration error, 2 precondition violated.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace flowclust::cli
