#ifndef LAGAME_ERRORS_HPP
#define LAGAME_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lagame {

// Bad input: degenerate games, wrong environment model, out-of-range
// parameters. The CLI maps these to exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation that was set up correctly but failed numerically.
// The CLI maps these to exit code 2.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateGame : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotInSimplex : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class WrongModel : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class FeedbackOutOfRange : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InvalidConfig : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class EmptyTrajectory : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotCase3 : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class StepTooLarge : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoConvergence : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace lagame

#endif  // LAGAME_ERRORS_HPP
