#pragma once

#include <stdexcept>
#include <string>

namespace alexgeo {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input outside the domain of a formula (non-finite values, perimeter
// constraints, out-of-chart points).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::string location = {})
      : Error(location.empty() ? what : location + ": " + what),
        message_(what),
        location_(std::move(location)) {}
  const std::string& message() const { return message_; }
  const std::string& location() const { return location_; }

 private:
  std::string message_;
  std::string location_;
};

// A space description violates curvature >= kappa (cone angle > 2pi).
class CurvatureBoundError : public Error {
 public:
  using Error::Error;
};

// A verified post-condition failed.
class InvariantBreach : public Error {
 public:
  using Error::Error;
};

}  // namespace alexgeo
