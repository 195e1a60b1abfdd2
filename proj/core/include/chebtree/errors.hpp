#ifndef CHEBTREE_ERRORS_HPP
#define CHEBTREE_ERRORS_HPP

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace chebtree {

struct TreeNode;

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A caller violated a documented precondition.
class InvalidArgumentError : public Error {
 public:
  explicit InvalidArgumentError(const std::string& msg) : Error(msg) {}
};

/// Sampled data is unusable (NaN/Inf); carries the offending location.
class InvalidDataError : public Error {
 public:
  InvalidDataError(const std::string& msg, std::vector<double> where)
      : Error(msg), location(std::move(where)) {}
  std::vector<double> location;
};

/// Adaptive construction hit a safety limit before resolving.
class BuildLimitError : public Error {
 public:
  BuildLimitError(const std::string& msg, std::size_t leaf_count, std::size_t depth)
      : Error(msg), leaves(leaf_count), depth(depth) {}
  std::size_t leaves;
  std::size_t depth;
  std::shared_ptr<TreeNode> partial;  ///< the partially built tree, when available
};

/// Evaluation requested outside the approximant's domain.
class OutOfDomainError : public Error {
 public:
  explicit OutOfDomainError(const std::string& msg) : Error(msg) {}
};

/// Division operand too close to zero at a sample point.
class DivisionSingularityError : public Error {
 public:
  DivisionSingularityError(const std::string& msg, std::vector<double> where)
      : Error(msg), location(std::move(where)) {}
  std::vector<double> location;
};

/// Zone alignment required by tree merging does not hold.
class MergePreconditionError : public Error {
 public:
  explicit MergePreconditionError(const std::string& msg) : Error(msg) {}
};

/// A leaf has no usable intersection with the approximation domain.
class DegenerateLeafError : public Error {
 public:
  explicit DegenerateLeafError(const std::string& msg) : Error(msg) {}
};

/// Too few sample points for a least-squares fit.
class InsufficientSamplesError : public Error {
 public:
  explicit InsufficientSamplesError(const std::string& msg) : Error(msg) {}
};

}  // namespace chebtree

#endif  // CHEBTREE_ERRORS_HPP
