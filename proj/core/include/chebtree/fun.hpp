#ifndef CHEBTREE_FUN_HPP
#define CHEBTREE_FUN_HPP

#include <cstddef>
#include <span>

#include "chebtree/tree.hpp"

namespace chebtree {

/// Compactly supported C-infinity bump profile on [-1,1]:
/// exp(1 - 1/(1-x^2)) for |x| < 1, exactly 0 for |x| >= 1.
double psi0(double x);

/// Tensor-product bump over a box: product of psi0 over affinely mapped
/// coordinates. Strictly positive inside the open box, zero outside.
double bump(const Box& domain, std::span<const double> x);

/// Denominator (sum of bumps) and numerator (bump-weighted interpolant sum)
/// of the partition-of-unity blend.
struct EvalPair {
  double S = 0.0;
  double P = 0.0;
};

/// Recursive evaluation of numerator and denominator over the subtree;
/// descends only into children whose domain contains x.
EvalPair numden(const TreeNode& node, std::span<const double> x);

/// Relative slack used for closed-box membership tests during evaluation.
inline constexpr double kContainTol = 1e-14;

/// Denominator values below this fall back to the zone-owning leaf.
inline constexpr double kDenominatorFloor = 1e-300;

/// Statistics of a grid evaluation (used by performance tests).
struct GridEvalStats {
  std::size_t madds = 0;  ///< multiply-adds in leaf tensor contractions
};

/// As PUFun::eval_grid, also accumulating contraction cost into stats.
NdArray eval_grid_counted(const PUFun& fun, std::span<const std::vector<double>> axes,
                          GridEvalStats& stats);

}  // namespace chebtree

#endif  // CHEBTREE_FUN_HPP
