#pragma once

#include <stdexcept>
#include <string>

namespace issc {

enum class ErrorKind {
  invalid_argument,
  unsupported_boundary,
  numerical_failure,
  blow_up,
  config,
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised by the simulator when a non-finite sample appears in the state.
class BlowUpError : public Error {
 public:
  BlowUpError(double time, const std::string& message)
      : Error(ErrorKind::blow_up, message), time_(time) {}

  double time() const noexcept { return time_; }

 private:
  double time_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool condition, const std::string& message) {
  if (!condition) fail(ErrorKind::invalid_argument, message);
}

}  // namespace issc
