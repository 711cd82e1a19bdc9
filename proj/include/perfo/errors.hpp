#pragma once

#include <stdexcept>
#include <string>

namespace perfo {

/// Invalid input: bad coefficients, malformed config, out-of-range parameters.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluation requested at (or too close to) a kernel singularity.
class SingularPoint : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The hole p + eps * closure(I[phi]) does not fit inside the open cell Q.
class ContainmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Nearly singular system, residual too large, or a non-convergent sequence.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace perfo
