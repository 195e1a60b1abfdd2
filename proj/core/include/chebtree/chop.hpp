#ifndef CHEBTREE_CHOP_HPP
#define CHEBTREE_CHOP_HPP

#include <cstddef>
#include <span>

namespace chebtree {

/// Verdict of the coefficient-decay test.
/// `cutoff` is the 1-based index of the last coefficient worth keeping
/// (so the truncated degree is cutoff - 1); resolved iff cutoff < length.
struct ChopResult {
  std::size_t cutoff = 0;
  bool resolved = false;
};

/// Decides from a magnitude sequence whether a Chebyshev series is resolved
/// at tolerance tol in (0,1), and where to truncate it. Sequences shorter
/// than 17 are never declared resolved. Scale-invariant in the input and
/// monotone under appending zeros.
ChopResult chop(std::span<const double> envelope, double tol);

}  // namespace chebtree

#endif  // CHEBTREE_CHOP_HPP
