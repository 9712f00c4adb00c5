#pragma once

#include <stdexcept>
#include <string>

namespace ksv {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateCurve : public Error {
 public:
  using Error::Error;
};

class SelfIntersection : public Error {
 public:
  using Error::Error;
};

class OrientationError : public Error {
 public:
  using Error::Error;
};

class GridTooCoarse : public Error {
 public:
  using Error::Error;
};

class GridMismatch : public Error {
 public:
  using Error::Error;
};

class TooFewZStations : public Error {
 public:
  using Error::Error;
};

/// Carries the name of the offending material field ("E", "nu" or "h").
class InvalidMaterial : public Error {
 public:
  InvalidMaterial(std::string field, const std::string& what)
      : Error(what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class InvalidRadius : public Error {
 public:
  using Error::Error;
};

class NonAxialForce : public Error {
 public:
  using Error::Error;
};

class NonTransverseLoad : public Error {
 public:
  using Error::Error;
};

/// Raised when a coefficient system is too ill-conditioned to trust. The
/// offending matrix is rendered into the message.
class SingularSystem : public Error {
 public:
  SingularSystem(const std::string& what, double condition)
      : Error(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::string key = {}, int line = 0)
      : Error(what), key_(std::move(key)), line_(line) {}
  const std::string& key() const noexcept { return key_; }
  int line() const noexcept { return line_; }

 private:
  std::string key_;
  int line_;
};

class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace ksv
