#ifndef CHEBTREE_ALGEBRA_HPP
#define CHEBTREE_ALGEBRA_HPP

#include <cstddef>
#include <functional>

#include "chebtree/tree.hpp"

namespace chebtree {

enum class BinaryOp { add, sub, mul, div };

const char* to_string(BinaryOp op);

struct MergeStats {
  std::size_t precondition_checks = 0;  ///< zone-alignment assertions performed
  std::size_t leaf_merges = 0;          ///< both-leaves base cases reached
};

/// Structurally merges the trees of f1 and f2 into `target` (a fresh leaf
/// root covering the shared domain box): leaf values are sampled from the
/// operands' global evaluations combined by op, and splits follow whichever
/// operand refines next in cyclic dimension order. Zone alignment between the
/// operands and the target is asserted on every recursive call.
///
/// The merged leaves hold full-size sampled values and are not yet chopped;
/// run refine() afterwards (apply_binary does both).
MergeStats merge_trees(BinaryOp op, const PUFun& f1, const PUFun& f2, TreeNode& target,
                       const BuildParams& params);

/// Binary arithmetic on approximants over the same domain box: merge the
/// trees, then refine the merged tree against x -> f1(x) op f2(x) so that
/// under-resolved leaves (typical for mul and div) split further.
PUFun apply_binary(BinaryOp op, const PUFun& f1, const PUFun& f2, const BuildParams& params);

/// Rebuilds an approximant of g(fun(x)) from scratch by resampling.
PUFun apply_unary_sample(const PUFun& fun, const std::function<double(double)>& g,
                         const BuildParams& params);

}  // namespace chebtree

#endif  // CHEBTREE_ALGEBRA_HPP
