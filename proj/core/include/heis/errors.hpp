#pragma once

#include <stdexcept>
#include <string>

#include "heis/hgroup.hpp"

namespace heis {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of an operation (λ ≤ 0, φ ∉ [0, π), ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// (s, t) = (0, 0) handed to an operation that needs a nonzero point.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// An iterative method failed to converge; the message carries diagnostics.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// A field evaluation produced a non-finite value.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, const Point& where)
      : Error(what + " at " + to_string(where)), point_(where) {}

  const Point& point() const noexcept { return point_; }

 private:
  Point point_;
};

/// A field required to be positive was not.
class PositivityError : public Error {
 public:
  PositivityError(const std::string& what, const Point& where)
      : Error(what + " at " + to_string(where)), point_(where) {}

  const Point& point() const noexcept { return point_; }

 private:
  Point point_;
};

/// A documented precondition of a verification harness does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Invalid FieldSpec parameters or an unparseable spec string.
class SpecError : public Error {
 public:
  using Error::Error;
};

}  // namespace heis
