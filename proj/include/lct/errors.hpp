#pragma once

#include <stdexcept>
#include <string>

namespace lct {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ZeroDenominator : public Error {
 public:
  explicit ZeroDenominator(const std::string& what = "zero denominator") : Error(what) {}
};

class SingularMatrix : public Error {
 public:
  explicit SingularMatrix(const std::string& what = "singular matrix") : Error(what) {}
};

class NotSymmetric : public Error {
 public:
  explicit NotSymmetric(const std::string& what = "matrix is not symmetric") : Error(what) {}
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

class UnsupportedType : public Error {
 public:
  explicit UnsupportedType(const std::string& what) : Error(what) {}
};

class MalformedTower : public Error {
 public:
  explicit MalformedTower(const std::string& what) : Error(what) {}
};

/// Malformed input text. `location` names the offending line or field.
class ParseError : public Error {
 public:
  ParseError(const std::string& location, const std::string& what)
      : Error(location.empty() ? what : location + ": " + what), location_(location) {}
  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

class DanglingReference : public Error {
 public:
  explicit DanglingReference(const std::string& what) : Error(what) {}
};

class UnknownVariable : public Error {
 public:
  explicit UnknownVariable(const std::string& what) : Error(what) {}
};

class NotSNC : public Error {
 public:
  explicit NotSNC(const std::string& what) : Error(what) {}
};

class UnsupportedProfile : public Error {
 public:
  explicit UnsupportedProfile(const std::string& what) : Error(what) {}
};

class Inconsistent : public Error {
 public:
  explicit Inconsistent(const std::string& what) : Error(what) {}
};

class NotAPermutation : public Error {
 public:
  explicit NotAPermutation(const std::string& what) : Error(what) {}
};

class NoReducedComponent : public Error {
 public:
  explicit NoReducedComponent(const std::string& what) : Error(what) {}
};

/// The invariant-curve elimination left a candidate standing.
class EliminationFails : public Error {
 public:
  EliminationFails(const std::string& candidate, const std::string& what)
      : Error(what), candidate_(candidate) {}
  const std::string& candidate() const noexcept { return candidate_; }

 private:
  std::string candidate_;
};

class NoFactorization : public Error {
 public:
  explicit NoFactorization(const std::string& what) : Error(what) {}
};

}  // namespace lct
