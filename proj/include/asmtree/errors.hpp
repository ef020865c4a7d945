#pragma once

#include <stdexcept>
#include <string>

namespace asmtree {

// Malformed input: bad parameters, unparsable JSON, out-of-range vertices.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Well-formed input that a computation declines: size caps, disconnected
// graphs, a vanishing leading coefficient.
class RefusedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace asmtree
