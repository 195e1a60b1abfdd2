#ifndef CHEBTREE_EXTENSION_HPP
#define CHEBTREE_EXTENSION_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "chebtree/domain_spec.hpp"
#include "chebtree/tree.hpp"

namespace chebtree {

/// Points of the (2n)^d tensor Chebyshev grid on leaf_domain that lie inside
/// the domain. Errors if none do.
std::vector<std::vector<double>> extension_sample_set(const Box& leaf_domain,
                                                      const DomainSpec& spec, std::size_t n);

/// Least-squares tensor-Chebyshev fit constrained on the inside part of a
/// boundary-straddling leaf.
struct LsqFit {
  CoeffTensor coeffs;         ///< degrees n-1 in every dimension
  std::size_t sample_count;   ///< P, size of the sample set
  double residual_rms;        ///< ||f - p||_2 / sqrt(P) over the sample set
};

/// Fits the degree-(n-1) tensor polynomial minimizing the discrete residual
/// over the inside part of a tensor Chebyshev grid on leaf_domain, using
/// column-pivoted Householder QR (basic solution; dependent columns are
/// zeroed at pivot cutoff 1e-14 relative to the largest pivot). Requires at
/// least n sample points.
///
/// fit_grid_per_dim selects the sampling density; 0 picks the default 3n
/// points per dimension (forced odd so the grid meets domain features lying
/// on the box midlines, which a 2n grid misses badly enough to lose five
/// orders of accuracy on reentrant corners).
LsqFit lsq_fit(const PointFn& f, const Box& leaf_domain, const DomainSpec& spec, std::size_t n,
               std::size_t fit_grid_per_dim = 0);

/// A single box face held fixed during zone shrinking (the shared interface
/// of a fresh split).
struct FrozenFace {
  std::size_t dim;
  bool upper;
};

/// Smallest axis-aligned box containing zone intersected with the domain,
/// located by predicate sampling on a 64-per-dimension lattice followed by
/// bisection of each free face to 1e-10 relative resolution. The frozen face
/// coordinate, when given, is preserved exactly.
Box shrink_zone_to_domain(const Box& zone, const DomainSpec& spec,
                          std::optional<FrozenFace> frozen = std::nullopt);

/// Adaptive refinement over a possibly nonrectangular domain: leaves whose
/// domain lies entirely inside follow the ordinary tensor refinement; leaves
/// straddling the boundary are fitted by least squares and, when the
/// residual exceeds params.tol, split in all dimensions successively with
/// child zones shrunk toward the boundary; leaves missing the domain are
/// marked empty.
void refine_extension(TreeNode& node, const PointFn& f, const DomainSpec& spec,
                      const BuildParams& params);

/// Builds an approximant of f over the domain described by spec, rooted at
/// its tight bounding box.
PUFun build_extension(PointFn f, const DomainSpec& spec, const BuildParams& params);

}  // namespace chebtree

#endif  // CHEBTREE_EXTENSION_HPP
