#include "chebtree/tree.hpp"

#include <algorithm>
#include <cmath>

#include "chebtree/chop.hpp"

namespace chebtree {

BuildParams BuildParams::defaults_for(std::size_t d) {
  BuildParams p;
  p.samples_per_dim = d >= 3 ? 65 : 129;
  return p;
}

void BuildParams::validate() const {
  if (samples_per_dim < 17)
    throw InvalidArgumentError("BuildParams: samples_per_dim must be >= 17");
  if (!(overlap > 1.0)) throw InvalidArgumentError("BuildParams: overlap must be > 1");
  if (!(tol > 0.0 && tol < 1.0)) throw InvalidArgumentError("BuildParams: tol must be in (0,1)");
  if (max_depth == 0 || max_leaves == 0)
    throw InvalidArgumentError("BuildParams: limits must be positive");
}

const ChebInterpolant* TreeNode::interpolant() const {
  if (const auto* t = std::get_if<TensorLeaf>(&leaf)) return &t->interp;
  if (const auto* e = std::get_if<ExtensionLeaf>(&leaf)) return &e->interp;
  return nullptr;
}

std::unique_ptr<TreeNode> TreeNode::clone() const {
  auto out = std::make_unique<TreeNode>();
  out->zone = zone;
  out->domain = domain;
  out->isdone = isdone;
  out->splitdim = splitdim;
  out->leaf = leaf;
  if (child[0]) out->child[0] = child[0]->clone();
  if (child[1]) out->child[1] = child[1]->clone();
  return out;
}

std::size_t TreeNode::leaf_count() const {
  if (is_leaf()) return 1;
  return child[0]->leaf_count() + child[1]->leaf_count();
}

std::size_t TreeNode::depth() const {
  if (is_leaf()) return 0;
  return 1 + std::max(child[0]->depth(), child[1]->depth());
}

Box extend_zone(const Box& zone, const Box& omega, double t) {
  if (!(t > 1.0)) throw InvalidArgumentError("extend_zone: t must be > 1");
  std::vector<Interval> ivs;
  ivs.reserve(zone.dim());
  for (std::size_t j = 0; j < zone.dim(); ++j) {
    const double delta = 0.5 * zone[j].width() * (1.0 + t);
    const double lo = std::max(omega[j].lo, zone[j].hi - delta);
    const double hi = std::min(zone[j].lo + delta, omega[j].hi);
    ivs.emplace_back(lo, hi);
  }
  return Box(std::move(ivs));
}

std::size_t split(TreeNode& node, std::size_t j, const Box& omega, double t,
                  std::size_t node_depth, const SplitLimits* limits) {
  if (!node.is_leaf()) {
    std::size_t added = split(*node.child[0], j, omega, t, node_depth + 1, limits);
    added += split(*node.child[1], j, omega, t, node_depth + 1, limits);
    return added;
  }
  if (j >= node.zone.dim()) throw InvalidArgumentError("split: bad dimension");
  if (node.isdone[j])
    throw InvalidArgumentError("split: dimension is flagged done on this leaf");
  if (limits) {
    if (node_depth + 1 > limits->max_depth)
      throw BuildLimitError("split: max tree depth exceeded",
                            limits->leaf_count ? *limits->leaf_count : 0, node_depth + 1);
    if (limits->leaf_count && *limits->leaf_count + 1 > limits->max_leaves)
      throw BuildLimitError("split: max leaf count exceeded", *limits->leaf_count, node_depth);
  }

  const double mid = node.zone[j].midpoint();
  node.splitdim = static_cast<int>(j);
  for (int k = 0; k < 2; ++k) {
    auto c = std::make_unique<TreeNode>();
    c->zone = node.zone;
    c->zone[j] = (k == 0) ? Interval(node.zone[j].lo, mid) : Interval(mid, node.zone[j].hi);
    c->domain = extend_zone(c->zone, omega, t);
    c->isdone = node.isdone;
    node.child[k] = std::move(c);
  }
  node.leaf = std::monostate{};
  if (limits && limits->leaf_count) ++*limits->leaf_count;
  return 1;
}

NdArray SampleSource::on_grid(std::span<const ChebGrid1D> axes) const {
  if (grid_) return grid_(axes);
  const std::size_t d = axes.size();
  std::vector<std::size_t> shape(d);
  for (std::size_t j = 0; j < d; ++j) shape[j] = axes[j].n;
  NdArray out(shape);
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> x(d);
  for (std::size_t j = 0; j < d; ++j) x[j] = axes[j].points[0];
  const std::size_t total = out.size();
  for (std::size_t flat = 0; flat < total; ++flat) {
    out[flat] = point_(x);
    for (std::size_t j = d; j-- > 0;) {
      if (++idx[j] < shape[j]) {
        x[j] = axes[j].points[idx[j]];
        break;
      }
      idx[j] = 0;
      x[j] = axes[j].points[0];
    }
  }
  return out;
}

namespace {

struct RefineContext {
  const SampleSource& f;
  const BuildParams& params;
  const Box& omega;
  std::size_t leaf_count = 0;
};

std::vector<ChebGrid1D> full_grid(const Box& domain, std::size_t n) {
  std::vector<ChebGrid1D> g;
  g.reserve(domain.dim());
  for (std::size_t j = 0; j < domain.dim(); ++j) g.push_back(cheb_points(n, domain[j]));
  return g;
}

void check_finite(const NdArray& values, std::span<const ChebGrid1D> axes) {
  for (std::size_t flat = 0; flat < values.size(); ++flat) {
    if (std::isfinite(values[flat])) continue;
    const auto idx = values.unravel(flat);
    std::vector<double> where(axes.size());
    for (std::size_t j = 0; j < axes.size(); ++j) where[j] = axes[j].points[idx[j]];
    throw InvalidDataError("refine: non-finite sample", std::move(where));
  }
}

// Copies the leading block [0, keep_j) of each dimension.
CoeffTensor truncate_coeffs(const CoeffTensor& coeffs, const std::vector<std::size_t>& keep) {
  const auto& shape = coeffs.data.shape();
  NdArray out(keep);
  std::vector<std::size_t> idx(keep.size(), 0);
  const std::size_t total = out.size();
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat, in = 0;
    for (std::size_t j = keep.size(); j-- > 0;) {
      idx[j] = rem % keep[j];
      rem /= keep[j];
    }
    for (std::size_t j = 0; j < keep.size(); ++j) in = in * shape[j] + idx[j];
    out[flat] = coeffs.data[in];
  }
  return CoeffTensor{std::move(out)};
}

std::vector<ChebGrid1D> truncated_grid(const Box& domain, const std::vector<std::size_t>& sizes) {
  std::vector<ChebGrid1D> g;
  g.reserve(sizes.size());
  for (std::size_t j = 0; j < sizes.size(); ++j)
    g.push_back(sizes[j] >= 2 ? cheb_points(sizes[j], domain[j]) : midpoint_grid(domain[j]));
  return g;
}

void refine_node(TreeNode& node, RefineContext& ctx, std::size_t depth) {
  if (!node.is_leaf()) {
    refine_node(*node.child[0], ctx, depth + 1);
    refine_node(*node.child[1], ctx, depth + 1);
    return;
  }

  const std::size_t d = ctx.omega.dim();
  const std::size_t n = ctx.params.samples_per_dim;

  // Sample on the full N^d domain grid, reusing values handed over by a
  // previous pass (tree merging) when they are already full size.
  std::vector<ChebGrid1D> grid;
  NdArray values;
  CoeffTensor coeffs;
  bool reused = false;
  if (const TensorLeaf* t = node.tensor()) {
    const bool full = t->grid.size() == d &&
                      std::all_of(t->grid.begin(), t->grid.end(),
                                  [&](const ChebGrid1D& g) { return g.n == n; }) &&
                      t->interp.box == node.domain;
    if (full) {
      grid = t->grid;
      values = t->values;
      coeffs = t->interp.coeffs;
      reused = true;
    }
  }
  if (!reused) {
    grid = full_grid(node.domain, n);
    values = ctx.f.on_grid(grid);
    check_finite(values, grid);
    coeffs = values_to_coeffs(values);
  }

  std::vector<ChopResult> verdict(d);
  for (std::size_t j = 0; j < d; ++j)
    verdict[j] = chop(sum_coeff_magnitudes_except(coeffs, j), ctx.params.tol);

  // Mark every freshly resolved dimension before performing any split, so
  // children inherit the complete verdict of this pass; the merge algorithm's
  // zone-alignment invariant relies on unfinished dimensions being exactly
  // the ones a subtree may still split.
  for (std::size_t j = 0; j < d; ++j)
    if (!node.isdone[j] && verdict[j].resolved) node.isdone[j] = true;

  SplitLimits limits{ctx.params.max_depth, ctx.params.max_leaves, &ctx.leaf_count};
  bool any_split = false;
  for (std::size_t j = 0; j < d; ++j) {
    if (node.isdone[j]) continue;
    split(node, j, ctx.omega, ctx.params.overlap, depth, &limits);
    any_split = true;
  }

  if (!any_split) {
    std::vector<std::size_t> keep(d);
    for (std::size_t j = 0; j < d; ++j) keep[j] = verdict[j].cutoff;
    CoeffTensor truncated = truncate_coeffs(coeffs, keep);
    NdArray small_values = coeffs_to_values(truncated, keep);
    node.leaf = TensorLeaf{truncated_grid(node.domain, keep), std::move(small_values),
                           ChebInterpolant{std::move(truncated), node.domain}};
    return;
  }
  refine_node(*node.child[0], ctx, depth + 1);
  refine_node(*node.child[1], ctx, depth + 1);
}

}  // namespace

void refine(TreeNode& node, const SampleSource& f, const BuildParams& params, const Box& omega) {
  params.validate();
  RefineContext ctx{f, params, omega};
  ctx.leaf_count = node.leaf_count();
  refine_node(node, ctx, 0);
}

PUFun build(PointFn f, const Box& omega, const BuildParams& params) {
  return build(SampleSource(std::move(f)), omega, params);
}

PUFun build(const SampleSource& f, const Box& omega, const BuildParams& params) {
  params.validate();
  auto root = std::make_unique<TreeNode>();
  root->zone = omega;
  root->domain = omega;
  root->isdone.assign(omega.dim(), false);
  RefineContext ctx{f, params, omega};
  ctx.leaf_count = 1;
  try {
    refine_node(*root, ctx, 0);
  } catch (BuildLimitError& e) {
    e.partial = std::shared_ptr<TreeNode>(std::move(root));
    throw;
  }
  return PUFun(std::move(root), params, omega);
}

PUFun::PUFun(std::unique_ptr<TreeNode> root, BuildParams params, Box omega,
             std::optional<DomainSpec> domain)
    : root_(std::move(root)),
      params_(std::move(params)),
      omega_(std::move(omega)),
      domain_(std::move(domain)) {
  if (!root_) throw InvalidArgumentError("PUFun: null root");
}

namespace {
void collect_leaves(const TreeNode& node, std::vector<const TreeNode*>& out) {
  if (node.is_leaf()) {
    out.push_back(&node);
    return;
  }
  collect_leaves(*node.child[0], out);
  collect_leaves(*node.child[1], out);
}
}  // namespace

std::vector<const TreeNode*> PUFun::leaves() const {
  std::vector<const TreeNode*> out;
  collect_leaves(*root_, out);
  return out;
}

std::size_t PUFun::stored_points() const {
  std::size_t total = 0;
  for (const TreeNode* leaf : leaves()) {
    if (const TensorLeaf* t = leaf->tensor()) {
      total += t->values.size();
    } else if (const ExtensionLeaf* e = leaf->extension()) {
      total += e->interp.coeffs.data.size();
    }
  }
  return total;
}

PUFun PUFun::clone() const { return PUFun(root_->clone(), params_, omega_, domain_); }

}  // namespace chebtree
