#pragma once

#include <stdexcept>
#include <string>

namespace latkep {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Bad input: malformed config, out-of-range parameter, violated precondition.
// CLI maps this to exit code 2.
class ValidationError : public Error {
  public:
    using Error::Error;
};

// Run aborted by a numerical guard: singularity approach, boundary
// contamination, non-finite state. CLI maps this to exit code 3.
class NumericalGuardError : public Error {
  public:
    using Error::Error;
};

}  // namespace latkep
