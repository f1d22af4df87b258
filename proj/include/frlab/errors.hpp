#pragma once

#include <stdexcept>
#include <string>

namespace frlab {

/// Base for every error raised by the library. Contract violations are
/// exceptions; numerical failures that a theorem predicts are report
/// entries instead.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A precondition on shapes or symmetry did not hold.
class ContractError : public Error {
public:
  using Error::Error;
};

class PsdViolation : public Error {
public:
  PsdViolation(double min_eig, double max_eig)
      : Error("matrix is not positive semi-definite: smallest eigenvalue " +
              std::to_string(min_eig) + " against largest " +
              std::to_string(max_eig)),
        min_eigenvalue(min_eig), max_eigenvalue(max_eig) {}

  double min_eigenvalue;
  double max_eigenvalue;
};

/// The truncated family is linearly dependent; `dependent_index` is the
/// first position whose vector lies in the span of the earlier ones.
class NotABasis : public Error {
public:
  NotABasis(std::size_t index, const std::string& what)
      : Error(what), dependent_index(index) {}

  std::size_t dependent_index;
};

/// The truncated frame operator does not have full rank.
class SpanError : public Error {
public:
  SpanError(std::size_t rank, std::size_t dim)
      : Error("truncated family does not span: rank " + std::to_string(rank) +
              " < dimension " + std::to_string(dim) + " (deficient by " +
              std::to_string(dim - rank) + ")"),
        rank(rank), dim(dim) {}

  std::size_t rank;
  std::size_t dim;
};

class InadmissiblePerturbation : public Error {
public:
  InadmissiblePerturbation(double spent, double budget)
      : Error("perturbation exceeds the stability budget: spent " +
              std::to_string(spent) + " >= budget " + std::to_string(budget)),
        spent(spent), budget(budget) {}

  double spent;
  double budget;
};

class ConditioningError : public Error {
public:
  ConditioningError(double condition, const std::string& what)
      : Error(what + " (condition number " + std::to_string(condition) + ")"),
        condition(condition) {}

  double condition;
};

class UnboundedSequence : public Error {
public:
  using Error::Error;
};

class UnsupportedStructure : public Error {
public:
  using Error::Error;
};

class PreconditionError : public Error {
public:
  using Error::Error;
};

}  // namespace frlab
