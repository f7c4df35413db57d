#pragma once

#include <stdexcept>
#include <string>

namespace torusctl {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidWaveVector : public Error {
 public:
  using Error::Error;
};

class DivergenceViolation : public Error {
 public:
  using Error::Error;
};

class DegeneratePair : public Error {
 public:
  using Error::Error;
};

class AliasingError : public Error {
 public:
  using Error::Error;
};

class NonSymmetricModeSet : public Error {
 public:
  using Error::Error;
};

class BlowUpError : public Error {
 public:
  BlowUpError(const std::string& what, double last_valid_time)
      : Error(what), last_valid_time_(last_valid_time) {}

  double last_valid_time() const noexcept { return last_valid_time_; }

 private:
  double last_valid_time_;
};

class HorizonMismatch : public Error {
 public:
  using Error::Error;
};

class ResolutionBudgetExceeded : public Error {
 public:
  ResolutionBudgetExceeded(const std::string& what, long required_steps)
      : Error(what), required_steps_(required_steps) {}

  long required_steps() const noexcept { return required_steps_; }

 private:
  long required_steps_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace torusctl
