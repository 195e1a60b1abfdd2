#include "chebtree/fun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace chebtree {

double psi0(double x) {
  if (std::abs(x) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - x * x));
}

double bump(const Box& domain, std::span<const double> x) {
  double w = 1.0;
  for (std::size_t j = 0; j < domain.dim(); ++j) {
    w *= psi0(domain[j].to_unit(x[j]));
    if (w == 0.0) return 0.0;
  }
  return w;
}

EvalPair numden(const TreeNode& node, std::span<const double> x) {
  if (node.is_leaf()) {
    const ChebInterpolant* ip = node.interpolant();
    if (!ip) return {};
    const double w = bump(node.domain, x);
    if (w == 0.0) return {};
    return {w, w * ip->eval(x)};
  }
  EvalPair out;
  for (int k = 0; k < 2; ++k) {
    if (!node.child[k]->domain.contains(x, kContainTol)) continue;
    const EvalPair part = numden(*node.child[k], x);
    out.S += part.S;
    out.P += part.P;
  }
  return out;
}

namespace {

// Locates the leaf whose zone owns x (left child wins on shared faces). For
// trees whose zones were shrunk to a curved domain the walk can fall through;
// the nearest leaf holding an interpolant is used instead.
const TreeNode* owning_leaf(const TreeNode& root, std::span<const double> x) {
  const TreeNode* node = &root;
  while (!node->is_leaf()) {
    if (node->child[0]->zone.contains(x, kContainTol)) {
      node = node->child[0].get();
    } else if (node->child[1]->zone.contains(x, kContainTol)) {
      node = node->child[1].get();
    } else {
      return nullptr;
    }
  }
  return node;
}

void nearest_payload_leaf(const TreeNode& node, std::span<const double> x, double& best,
                          const TreeNode** out) {
  if (node.is_leaf()) {
    if (!node.interpolant()) return;
    const double d2 = node.zone.distance2(x);
    if (d2 < best) {
      best = d2;
      *out = &node;
    }
    return;
  }
  nearest_payload_leaf(*node.child[0], x, best, out);
  nearest_payload_leaf(*node.child[1], x, best, out);
}

// Direct single-leaf evaluation for points where every bump vanishes
// (boundary faces of omega) or underflows.
double fallback_eval(const TreeNode& root, std::span<const double> x) {
  const TreeNode* leaf = owning_leaf(root, x);
  if (!leaf || !leaf->interpolant()) {
    double best = std::numeric_limits<double>::infinity();
    leaf = nullptr;
    nearest_payload_leaf(root, x, best, &leaf);
    if (!leaf) throw Error("eval: tree has no resolved leaves");
    std::vector<double> clamped(x.begin(), x.end());
    for (std::size_t j = 0; j < clamped.size(); ++j)
      clamped[j] = std::clamp(clamped[j], leaf->domain[j].lo, leaf->domain[j].hi);
    return leaf->interpolant()->eval(clamped);
  }
  return leaf->interpolant()->eval(x);
}

}  // namespace

double PUFun::eval(std::span<const double> x) const {
  if (x.size() != dim()) throw InvalidArgumentError("eval: wrong point dimension");
  if (!omega_.contains(x, kContainTol)) throw OutOfDomainError("eval: point outside domain box");
  if (domain_ && !domain_->inside(x))
    throw OutOfDomainError("eval: point outside the approximation domain");
  const EvalPair sp = numden(*root_, x);
  if (sp.S < kDenominatorFloor) return fallback_eval(*root_, x);
  return sp.P / sp.S;
}

namespace {

struct AxisRange {
  std::size_t begin = 0;
  std::size_t end = 0;  // half-open
  bool empty() const { return begin >= end; }
};

AxisRange axis_range(const std::vector<double>& axis, const Interval& iv) {
  const double slack = kContainTol * iv.width();
  const auto lo = std::lower_bound(axis.begin(), axis.end(), iv.lo - slack);
  const auto hi = std::upper_bound(axis.begin(), axis.end(), iv.hi + slack);
  return AxisRange{static_cast<std::size_t>(lo - axis.begin()),
                   static_cast<std::size_t>(hi - axis.begin())};
}

void accumulate_leaf(const TreeNode& leaf, std::span<const std::vector<double>> axes,
                     NdArray& num, NdArray& den, GridEvalStats* stats) {
  const ChebInterpolant* ip = leaf.interpolant();
  if (!ip) return;
  const std::size_t d = axes.size();

  std::vector<AxisRange> ranges(d);
  std::vector<std::vector<double>> sub(d);
  std::vector<std::vector<double>> psi(d);
  for (std::size_t j = 0; j < d; ++j) {
    ranges[j] = axis_range(axes[j], leaf.domain[j]);
    if (ranges[j].empty()) return;
    sub[j].assign(axes[j].begin() + ranges[j].begin, axes[j].begin() + ranges[j].end);
    psi[j].resize(sub[j].size());
    for (std::size_t i = 0; i < sub[j].size(); ++i)
      psi[j][i] = psi0(leaf.domain[j].to_unit(sub[j][i]));
  }

  std::size_t* madds = stats ? &stats->madds : nullptr;
  const NdArray values = ip->eval_grid(sub, madds);

  // row-major walk over the sub-box; innermost dimension handled contiguously
  const auto& vshape = values.shape();
  std::vector<std::size_t> out_stride(d);
  for (std::size_t j = 0; j < d; ++j) {
    std::size_t s = 1;
    for (std::size_t k = j + 1; k < d; ++k) s *= axes[k].size();
    out_stride[j] = s;
  }
  const std::size_t inner = vshape[d - 1];
  std::vector<std::size_t> idx(d, 0);
  const std::size_t rows = values.size() / inner;
  for (std::size_t row = 0; row < rows; ++row) {
    double wrow = 1.0;
    std::size_t base = 0;
    for (std::size_t j = 0; j + 1 < d; ++j) {
      wrow *= psi[j][idx[j]];
      base += (ranges[j].begin + idx[j]) * out_stride[j];
    }
    base += ranges[d - 1].begin;
    const double* vrow = values.data() + row * inner;
    if (wrow != 0.0) {
      for (std::size_t k = 0; k < inner; ++k) {
        const double w = wrow * psi[d - 1][k];
        num[base + k] += w * vrow[k];
        den[base + k] += w;
      }
    }
    for (std::size_t j = d - 1; j-- > 0;) {
      if (++idx[j] < vshape[j]) break;
      idx[j] = 0;
    }
  }
}

}  // namespace

NdArray eval_grid_counted(const PUFun& fun, std::span<const std::vector<double>> axes,
                          GridEvalStats& stats) {
  const std::size_t d = fun.dim();
  if (axes.size() != d) throw InvalidArgumentError("eval_grid: wrong axis count");
  std::vector<std::size_t> shape(d);
  for (std::size_t j = 0; j < d; ++j) {
    if (axes[j].empty()) throw InvalidArgumentError("eval_grid: empty axis");
    if (!std::is_sorted(axes[j].begin(), axes[j].end()))
      throw InvalidArgumentError("eval_grid: axes must be sorted ascending");
    for (double v : axes[j])
      if (!fun.omega()[j].contains(v, kContainTol))
        throw OutOfDomainError("eval_grid: axis value outside domain box");
    shape[j] = axes[j].size();
  }

  NdArray num(shape), den(shape);
  for (const TreeNode* leaf : fun.leaves()) accumulate_leaf(*leaf, axes, num, den, &stats);

  NdArray out(shape);
  const std::optional<DomainSpec>& spec = fun.domain();
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> x(d);
  for (std::size_t j = 0; j < d; ++j) x[j] = axes[j][0];
  const std::size_t total = out.size();
  for (std::size_t flat = 0; flat < total; ++flat) {
    if (spec && !spec->inside(x)) {
      out[flat] = std::numeric_limits<double>::quiet_NaN();
    } else if (den[flat] < kDenominatorFloor) {
      out[flat] = fallback_eval(fun.root(), x);
    } else {
      out[flat] = num[flat] / den[flat];
    }
    for (std::size_t j = d; j-- > 0;) {
      if (++idx[j] < shape[j]) {
        x[j] = axes[j][idx[j]];
        break;
      }
      idx[j] = 0;
      x[j] = axes[j][0];
    }
  }
  return out;
}

NdArray PUFun::eval_grid(std::span<const std::vector<double>> axes) const {
  GridEvalStats stats;
  return eval_grid_counted(*this, axes, stats);
}

PUFun PUFun::differentiate(std::size_t j) const {
  if (j >= dim()) throw InvalidArgumentError("differentiate: bad dimension");
  auto new_root = root_->clone();
  const auto relabel = [&](auto&& self, TreeNode& node) -> void {
    if (!node.is_leaf()) {
      self(self, *node.child[0]);
      self(self, *node.child[1]);
      return;
    }
    if (TensorLeaf* t = node.tensor()) {
      ChebInterpolant dip = t->interp.differentiate(j);
      const std::vector<std::size_t> sizes = dip.coeffs.data.shape();
      NdArray values = coeffs_to_values(dip.coeffs, sizes);
      std::vector<ChebGrid1D> grid;
      grid.reserve(sizes.size());
      for (std::size_t k = 0; k < sizes.size(); ++k)
        grid.push_back(sizes[k] >= 2 ? cheb_points(sizes[k], node.domain[k])
                                     : midpoint_grid(node.domain[k]));
      node.leaf = TensorLeaf{std::move(grid), std::move(values), std::move(dip)};
    } else if (const ExtensionLeaf* e = node.extension()) {
      node.leaf = ExtensionLeaf{e->interp.differentiate(j), e->sample_count, e->residual_rms};
    }
  };
  relabel(relabel, *new_root);
  return PUFun(std::move(new_root), params_, omega_, domain_);
}

double PUFun::integrate() const {
  if (domain_)
    throw InvalidArgumentError("integrate: nonrectangular domains are not supported");
  double total = 0.0;
  const std::size_t d = dim();
  for (const TreeNode* leaf : leaves()) {
    const TensorLeaf* t = leaf->tensor();
    if (!t) throw Error("integrate: tree has an unresolved leaf");

    // Resample the leaf interpolant on a Chebyshev grid over its zone, sized
    // to the truncated degrees so the quadrature is exact for it.
    std::vector<std::vector<double>> axes(d);
    std::vector<std::vector<double>> weights(d);
    for (std::size_t j = 0; j < d; ++j) {
      const std::size_t n = std::max<std::size_t>(t->interp.coeffs.data.shape()[j], 2);
      axes[j] = cheb_points(n, leaf->zone[j]).points;
      weights[j] = clenshaw_curtis_weights(n, leaf->zone[j]);
    }
    const NdArray values = t->interp.eval_grid(axes);

    const auto& vshape = values.shape();
    const std::size_t inner = vshape[d - 1];
    const std::size_t rows = values.size() / inner;
    std::vector<std::size_t> idx(d, 0);
    double acc = 0.0;
    for (std::size_t row = 0; row < rows; ++row) {
      double wrow = 1.0;
      for (std::size_t j = 0; j + 1 < d; ++j) wrow *= weights[j][idx[j]];
      const double* vrow = values.data() + row * inner;
      double line = 0.0;
      for (std::size_t k = 0; k < inner; ++k) line += weights[d - 1][k] * vrow[k];
      acc += wrow * line;
      for (std::size_t j = d - 1; j-- > 0;) {
        if (++idx[j] < vshape[j]) break;
        idx[j] = 0;
      }
    }
    total += acc;
  }
  return total;
}

}  // namespace chebtree
