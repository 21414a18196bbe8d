#pragma once

#include <stdexcept>
#include <string>

namespace ektau {

enum class ErrorKind {
  Parameter,
  Domain,
  Usage,
  Immersion,
  Umbilic,
  Focal,
  Escape,
  Consistency,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised when a geodesic leaves the chart domain; carries the flow time at exit.
class EscapeError : public Error {
 public:
  EscapeError(const std::string& what, double exit_parameter)
      : Error(ErrorKind::Escape, what), exit_parameter_(exit_parameter) {}
  double exit_parameter() const noexcept { return exit_parameter_; }

 private:
  double exit_parameter_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace ektau
