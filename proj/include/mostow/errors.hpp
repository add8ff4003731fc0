#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mostow {

enum class ErrorKind {
  Validation,
  Shape,
  Domain,
  Singular,
  NumericalFailure,
  NonConvergence,
  DegeneratePlane,
  EmptySubspace,
  NotInSubspace,
  Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Base of every exception thrown by the library. The kind drives the CLI
/// exit-code mapping.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

template <ErrorKind K>
class TypedError : public Error {
 public:
  explicit TypedError(const std::string& what) : Error(K, what) {}
};

using ValidationError = TypedError<ErrorKind::Validation>;
using ShapeError = TypedError<ErrorKind::Shape>;
using DomainError = TypedError<ErrorKind::Domain>;
using SingularError = TypedError<ErrorKind::Singular>;
using NumericalFailure = TypedError<ErrorKind::NumericalFailure>;
using NonConvergence = TypedError<ErrorKind::NonConvergence>;
using DegeneratePlaneError = TypedError<ErrorKind::DegeneratePlane>;
using EmptySubspace = TypedError<ErrorKind::EmptySubspace>;
using NotInSubspace = TypedError<ErrorKind::NotInSubspace>;
using IoError = TypedError<ErrorKind::Io>;

}  // namespace mostow
