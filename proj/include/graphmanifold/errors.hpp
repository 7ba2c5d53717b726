#pragma once

#include <stdexcept>
#include <string>

namespace gm {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotASubgroup : public Error {
 public:
  using Error::Error;
};

class NotUnimodular : public Error {
 public:
  using Error::Error;
};

class InvalidBasisChange : public Error {
 public:
  using Error::Error;
};

class InvalidManifold : public Error {
 public:
  using Error::Error;
};

class RankViolation : public Error {
 public:
  using Error::Error;
};

class TypeTooLarge : public Error {
 public:
  using Error::Error;
};

/// Raised when a neighbouring block (or the block itself) does not have the
/// type an operation needs.
class TypeObstruction : public Error {
 public:
  TypeObstruction(std::string vertex, int type, const std::string& what)
      : Error(what), vertex_(std::move(vertex)), type_(type) {}
  const std::string& vertex() const noexcept { return vertex_; }
  int type() const noexcept { return type_; }

 private:
  std::string vertex_;
  int type_;
};

class SecondaryIndexObstruction : public Error {
 public:
  SecondaryIndexObstruction(std::string vertex, const std::string& what)
      : Error(what), vertex_(std::move(vertex)) {}
  const std::string& vertex() const noexcept { return vertex_; }

 private:
  std::string vertex_;
};

/// A stage hypothesis does not hold. `hypothesis` is a short machine-readable
/// tag ("intersection-number", "secondary-index", "type", ...).
class PreconditionFailed : public Error {
 public:
  PreconditionFailed(std::string hypothesis, std::string location, const std::string& what)
      : Error(what), hypothesis_(std::move(hypothesis)), location_(std::move(location)) {}
  const std::string& hypothesis() const noexcept { return hypothesis_; }
  const std::string& location() const noexcept { return location_; }

 private:
  std::string hypothesis_;
  std::string location_;
};

class SearchBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class SplitFailure : public Error {
 public:
  using Error::Error;
};

class DegenerateGluing : public Error {
 public:
  using Error::Error;
};

class BadPermutation : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed. Always a bug or a mathematical
/// discrepancy worth reporting, never an input problem.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace gm
