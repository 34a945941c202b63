#pragma once

#include <stdexcept>
#include <string>

namespace flowclust {

// Malformed input files or values. The CLI maps this to exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input that parses fine but violates an algorithm precondition
// (seed volume too large, empty seed, ...). The CLI maps this to exit code 2.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace flowclust
