#ifndef CHEBTREE_TREE_HPP
#define CHEBTREE_TREE_HPP

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "chebtree/cheb.hpp"
#include "chebtree/domain_spec.hpp"
#include "chebtree/geometry.hpp"
#include "chebtree/ndarray.hpp"

namespace chebtree {

/// Construction parameters for adaptive builds.
struct BuildParams {
  std::size_t samples_per_dim = 129;            ///< N, grid size per dimension
  double overlap = 1.16;                        ///< t, zone extension factor (> 1)
  double tol = 1e-16;                           ///< target tolerance
  std::size_t max_depth = 30;                   ///< safety limit on tree depth
  std::size_t max_leaves = std::size_t{1} << 20;  ///< safety limit on leaf count

  /// N = 129 for d <= 2, N = 65 for d >= 3; everything else at defaults.
  static BuildParams defaults_for(std::size_t d);
  void validate() const;
};

/// Resolved leaf on a hyperrectangle: truncated grid, values, interpolant.
struct TensorLeaf {
  std::vector<ChebGrid1D> grid;
  NdArray values;
  ChebInterpolant interp;
};

/// Boundary-straddling leaf fitted by least squares on the inside part of
/// its domain.
struct ExtensionLeaf {
  ChebInterpolant interp;
  std::size_t sample_count = 0;
  double residual_rms = 0.0;
};

/// Leaf with no usable intersection with the approximation domain.
struct EmptyLeaf {};

using LeafState = std::variant<std::monostate, TensorLeaf, ExtensionLeaf, EmptyLeaf>;

/// Node of the adaptive binary tree. Exactly one of {splitdim >= 0 with both
/// children} or {leaf} holds.
struct TreeNode {
  Box zone;
  Box domain;
  std::vector<bool> isdone;
  int splitdim = -1;
  std::array<std::unique_ptr<TreeNode>, 2> child;
  LeafState leaf;

  bool is_leaf() const { return splitdim < 0; }
  const TensorLeaf* tensor() const { return std::get_if<TensorLeaf>(&leaf); }
  TensorLeaf* tensor() { return std::get_if<TensorLeaf>(&leaf); }
  const ExtensionLeaf* extension() const { return std::get_if<ExtensionLeaf>(&leaf); }
  bool is_empty_leaf() const { return std::holds_alternative<EmptyLeaf>(leaf); }

  /// Interpolant of a resolved (tensor or extension) leaf, else nullptr.
  const ChebInterpolant* interpolant() const;

  std::unique_ptr<TreeNode> clone() const;
  std::size_t leaf_count() const;
  std::size_t depth() const;
};

/// Extends a zone on all sides proportionally to its width (factor (1+t)/2),
/// clipped to omega. Requires t > 1 so that the result contains the zone.
Box extend_zone(const Box& zone, const Box& omega, double t);

/// Optional limit enforcement for splits performed during refinement.
struct SplitLimits {
  std::size_t max_depth = 0;
  std::size_t max_leaves = 0;
  std::size_t* leaf_count = nullptr;  ///< running total, updated on each split
};

/// Bisects a leaf's zone at its midpoint in dimension j; children receive
/// extended domains and a copy of the parent's isdone flags. For an internal
/// node the split is forwarded recursively to both children. Returns the
/// number of leaves added. Splitting a leaf in a dimension flagged done is a
/// contract violation.
std::size_t split(TreeNode& node, std::size_t j, const Box& omega, double t,
                  std::size_t node_depth = 0, const SplitLimits* limits = nullptr);

using PointFn = std::function<double(std::span<const double>)>;
using GridFn = std::function<NdArray(std::span<const ChebGrid1D>)>;

/// A target function that can be sampled pointwise and, optionally, on whole
/// tensor grids at once (used to avoid pointwise evaluation when the source
/// is itself an approximant).
class SampleSource {
 public:
  explicit SampleSource(PointFn point) : point_(std::move(point)) {}
  SampleSource(PointFn point, GridFn grid)
      : point_(std::move(point)), grid_(std::move(grid)) {}

  double at(std::span<const double> x) const { return point_(x); }
  NdArray on_grid(std::span<const ChebGrid1D> axes) const;

 private:
  PointFn point_;
  GridFn grid_;
};

/// Adaptive refinement pass over the subtree rooted at node: samples leaves
/// on full N^d grids, chops per-dimension coefficient envelopes, marks
/// resolved dimensions, splits unresolved ones (in ascending dimension
/// order) and recurses until every leaf stores a truncated payload. Leaves
/// already carrying full-size sampled values are not resampled.
void refine(TreeNode& node, const SampleSource& f, const BuildParams& params, const Box& omega);

class PUFun;

/// Builds an approximant on the hyperrectangle omega.
PUFun build(PointFn f, const Box& omega, const BuildParams& params);
PUFun build(const SampleSource& f, const Box& omega, const BuildParams& params);

/// A complete approximant: the tree plus its construction parameters.
class PUFun {
 public:
  PUFun(std::unique_ptr<TreeNode> root, BuildParams params, Box omega,
        std::optional<DomainSpec> domain = std::nullopt);

  PUFun(PUFun&&) noexcept = default;
  PUFun& operator=(PUFun&&) noexcept = default;

  const TreeNode& root() const { return *root_; }
  const Box& omega() const { return omega_; }
  const BuildParams& params() const { return params_; }
  const std::optional<DomainSpec>& domain() const { return domain_; }
  std::size_t dim() const { return omega_.dim(); }

  /// Leaves in depth-first, left-child-first order.
  std::vector<const TreeNode*> leaves() const;

  std::size_t leaf_count() const { return root_->leaf_count(); }
  std::size_t depth() const { return root_->depth(); }
  /// Total stored degrees of freedom over all leaves.
  std::size_t stored_points() const;

  /// Partition-of-unity blend at a point of the domain.
  double eval(std::span<const double> x) const;

  /// Blend on a Cartesian product grid; equal to pointwise eval everywhere.
  /// For nonrectangular domains, points outside the domain are NaN.
  NdArray eval_grid(std::span<const std::vector<double>> axes) const;

  /// Approximant of the partial derivative along dimension j: identical tree
  /// topology, spectrally differentiated leaf interpolants (weights are not
  /// differentiated).
  PUFun differentiate(std::size_t j) const;

  /// Integral over omega, summed zone-by-zone with Clenshaw-Curtis rules
  /// matched to each leaf's truncated degrees. Rectangular domains only.
  double integrate() const;

  PUFun clone() const;

 private:
  std::unique_ptr<TreeNode> root_;
  BuildParams params_;
  Box omega_;
  std::optional<DomainSpec> domain_;
};

}  // namespace chebtree

#endif  // CHEBTREE_TREE_HPP
