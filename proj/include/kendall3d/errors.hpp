// errors.hpp — exception types raised by the kendall3d library.
//
// Every library error derives from kendall3d::Error and carries an ErrorKind,
// which the CLI maps onto its exit codes.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kendall3d {

enum class ErrorKind {
  InvalidArgument,
  DegenerateConfiguration,
  SingularShape,
  DegenerateSpectrum,
  NoUniqueLogarithm,
  IllConditionedBasis,
  DegeneratePlane,
  Parse,
  Io,
  Spec,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& m) : Error(ErrorKind::InvalidArgument, m) {}
};

/// All landmarks (numerically) coincide, so no pre-shape exists.
class DegenerateConfiguration : public Error {
 public:
  explicit DegenerateConfiguration(const std::string& m)
      : Error(ErrorKind::DegenerateConfiguration, m) {}
};

/// Pre-shape of rank < 2: the rotation action is not free and the
/// horizontal space loses dimension.
class SingularShape : public Error {
 public:
  explicit SingularShape(const std::string& m) : Error(ErrorKind::SingularShape, m) {}
};

/// Repeated pseudo-singular values; the adapted basis degenerates.
class DegenerateSpectrum : public Error {
 public:
  explicit DegenerateSpectrum(const std::string& m)
      : Error(ErrorKind::DegenerateSpectrum, m) {}
};

class NoUniqueLogarithm : public Error {
 public:
  explicit NoUniqueLogarithm(const std::string& m)
      : Error(ErrorKind::NoUniqueLogarithm, m) {}
};

class IllConditionedBasis : public Error {
 public:
  explicit IllConditionedBasis(const std::string& m)
      : Error(ErrorKind::IllConditionedBasis, m) {}
};

class DegeneratePlane : public Error {
 public:
  explicit DegeneratePlane(const std::string& m) : Error(ErrorKind::DegeneratePlane, m) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& m, int line) : Error(ErrorKind::Parse, m), line_(line) {}
  /// 1-based line of the offending input, or 0 when not line-oriented.
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& m) : Error(ErrorKind::Io, m) {}
};

class SpecError : public Error {
 public:
  explicit SpecError(const std::string& m) : Error(ErrorKind::Spec, m) {}
};

}  // namespace kendall3d

namespace kendall3d {

/// Rethrows `e` as the same concrete error type with `context` prepended.
[[noreturn]] void rethrow_with_context(const Error& e, std::string_view context);

}  // namespace kendall3d
