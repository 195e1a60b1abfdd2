#include "chebtree/extension.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace chebtree {

DomainSpec disk_domain() {
  return DomainSpec{
      "disk",
      Box({Interval(-1.0, 1.0), Interval(-1.0, 1.0)}),
      [](std::span<const double> x) { return x[0] * x[0] + x[1] * x[1] <= 1.0; }};
}

DomainSpec diamond_domain() {
  return DomainSpec{
      "diamond",
      Box({Interval(-1.0, 1.0), Interval(-1.0, 1.0)}),
      [](std::span<const double> x) { return std::abs(x[0]) + std::abs(x[1]) <= 1.0; }};
}

DomainSpec astroid_domain(double lobe_offset, double radius) {
  const double c = lobe_offset;
  const double r23 = std::pow(radius, 2.0 / 3.0);
  auto lobe = [r23](double u, double v) {
    return std::pow(std::abs(u), 2.0 / 3.0) + std::pow(std::abs(v), 2.0 / 3.0) <= r23;
  };
  return DomainSpec{
      "astroid",
      Box({Interval(-(c + radius), c + radius), Interval(-radius, radius)}),
      [c, lobe](std::span<const double> x) {
        return lobe(x[0] - c, x[1]) || lobe(x[0] + c, x[1]);
      }};
}

std::optional<DomainSpec> domain_by_name(const std::string& name) {
  if (name == "disk") return disk_domain();
  if (name == "diamond") return diamond_domain();
  if (name == "astroid") return astroid_domain();
  return std::nullopt;
}

namespace {

std::vector<std::vector<double>> grid_axes(const Box& domain, std::size_t per_dim) {
  std::vector<std::vector<double>> axes(domain.dim());
  for (std::size_t j = 0; j < domain.dim(); ++j)
    axes[j] = cheb_points(per_dim, domain[j]).points;
  return axes;
}

std::size_t default_fit_grid(std::size_t n) {
  const std::size_t g = 3 * n;
  return g % 2 == 0 ? g + 1 : g;
}

// Flat-iterates the tensor grid, returning points and the inside mask.
struct GridScan {
  std::vector<std::vector<double>> inside_points;
  std::size_t total = 0;
};

GridScan scan_grid(const std::vector<std::vector<double>>& axes, const DomainSpec& spec) {
  GridScan out;
  const std::size_t d = axes.size();
  std::vector<std::size_t> shape(d);
  for (std::size_t j = 0; j < d; ++j) shape[j] = axes[j].size();
  out.total = NdArray::count(shape);
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> x(d);
  for (std::size_t j = 0; j < d; ++j) x[j] = axes[j][0];
  for (std::size_t flat = 0; flat < out.total; ++flat) {
    if (spec.inside(x)) out.inside_points.push_back(x);
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

}  // namespace

std::vector<std::vector<double>> extension_sample_set(const Box& leaf_domain,
                                                      const DomainSpec& spec, std::size_t n) {
  GridScan scan = scan_grid(grid_axes(leaf_domain, 2 * n), spec);
  if (scan.inside_points.empty())
    throw DegenerateLeafError("extension_sample_set: leaf domain misses the domain");
  return scan.inside_points;
}

LsqFit lsq_fit(const PointFn& f, const Box& leaf_domain, const DomainSpec& spec, std::size_t n,
               std::size_t fit_grid_per_dim) {
  if (fit_grid_per_dim == 0) fit_grid_per_dim = default_fit_grid(n);
  const GridScan scan = scan_grid(grid_axes(leaf_domain, fit_grid_per_dim), spec);
  if (scan.inside_points.empty())
    throw DegenerateLeafError("lsq_fit: leaf domain misses the domain");
  const std::vector<std::vector<double>>& pts = scan.inside_points;
  const std::size_t P = pts.size();
  if (P < n) throw InsufficientSamplesError("lsq_fit: fewer sample points than basis size n");
  const std::size_t d = leaf_domain.dim();
  std::size_t ncols = 1;
  for (std::size_t j = 0; j < d; ++j) ncols *= n;

  Eigen::MatrixXd A(static_cast<Eigen::Index>(P), static_cast<Eigen::Index>(ncols));
  Eigen::VectorXd b(static_cast<Eigen::Index>(P));
  std::vector<double> basis(d * n);
  std::vector<std::size_t> k(d, 0);
  for (std::size_t i = 0; i < P; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double s = leaf_domain[j].to_unit(pts[i][j]);
      double* row = &basis[j * n];
      row[0] = 1.0;
      if (n > 1) row[1] = s;
      for (std::size_t m = 2; m < n; ++m) row[m] = 2.0 * s * row[m - 1] - row[m - 2];
    }
    std::fill(k.begin(), k.end(), 0);
    for (std::size_t col = 0; col < ncols; ++col) {
      double v = 1.0;
      for (std::size_t j = 0; j < d; ++j) v *= basis[j * n + k[j]];
      A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(col)) = v;
      for (std::size_t j = d; j-- > 0;) {
        if (++k[j] < n) break;
        k[j] = 0;
      }
    }
    const double fi = f(pts[i]);
    if (!std::isfinite(fi)) throw InvalidDataError("lsq_fit: non-finite sample", pts[i]);
    b(static_cast<Eigen::Index>(i)) = fi;
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr;
  qr.setThreshold(1e-14);
  qr.compute(A);
  const Eigen::VectorXd c = qr.solve(b);
  const double residual = (b - A * c).norm() / std::sqrt(static_cast<double>(P));

  std::vector<std::size_t> shape(d, n);
  NdArray data(shape, std::vector<double>(c.data(), c.data() + c.size()));
  return LsqFit{CoeffTensor{std::move(data)}, P, residual};
}

namespace {

constexpr std::size_t kLattice = 64;
constexpr double kShrinkResolution = 1e-10;

std::vector<double> linspace(const Interval& iv, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = iv.lo + (iv.hi - iv.lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  v.front() = iv.lo;
  v.back() = iv.hi;
  return v;
}

// True if the (d-1)-dim cross-section of the zone at x_j = c meets the domain
// on a kLattice-per-dimension sample.
bool slice_has_inside(const Box& zone, const DomainSpec& spec, std::size_t j, double c) {
  const std::size_t d = zone.dim();
  std::vector<std::vector<double>> axes(d);
  for (std::size_t k = 0; k < d; ++k)
    axes[k] = (k == j) ? std::vector<double>{c} : linspace(zone[k], kLattice);
  std::vector<std::size_t> shape(d);
  for (std::size_t k = 0; k < d; ++k) shape[k] = axes[k].size();
  const std::size_t total = NdArray::count(shape);
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> x(d);
  for (std::size_t k = 0; k < d; ++k) x[k] = axes[k][0];
  for (std::size_t flat = 0; flat < total; ++flat) {
    if (spec.inside(x)) return true;
    for (std::size_t k = d; k-- > 0;) {
      if (++idx[k] < shape[k]) {
        x[k] = axes[k][idx[k]];
        break;
      }
      idx[k] = 0;
      x[k] = axes[k][0];
    }
  }
  return false;
}

}  // namespace

Box shrink_zone_to_domain(const Box& zone, const DomainSpec& spec,
                          std::optional<FrozenFace> frozen) {
  const std::size_t d = zone.dim();
  std::vector<std::vector<double>> lattice(d);
  for (std::size_t j = 0; j < d; ++j) lattice[j] = linspace(zone[j], kLattice);

  // coarse pass: per-dimension index extents of inside lattice points
  std::vector<std::size_t> kmin(d, kLattice), kmax(d, 0);
  std::vector<std::size_t> shape(d, kLattice);
  const std::size_t total = NdArray::count(shape);
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> x(d);
  for (std::size_t j = 0; j < d; ++j) x[j] = lattice[j][0];
  bool any = false;
  for (std::size_t flat = 0; flat < total; ++flat) {
    if (spec.inside(x)) {
      any = true;
      for (std::size_t j = 0; j < d; ++j) {
        kmin[j] = std::min(kmin[j], idx[j]);
        kmax[j] = std::max(kmax[j], idx[j]);
      }
    }
    for (std::size_t j = d; j-- > 0;) {
      if (++idx[j] < kLattice) {
        x[j] = lattice[j][idx[j]];
        break;
      }
      idx[j] = 0;
      x[j] = lattice[j][0];
    }
  }
  if (!any) throw DegenerateLeafError("shrink_zone_to_domain: zone misses the domain");

  std::vector<Interval> out(zone.intervals());
  for (std::size_t j = 0; j < d; ++j) {
    const double resolution = kShrinkResolution * zone[j].width();
    const bool lower_frozen = frozen && frozen->dim == j && !frozen->upper;
    const bool upper_frozen = frozen && frozen->dim == j && frozen->upper;

    double lo = zone[j].lo;
    if (!lower_frozen && kmin[j] > 0) {
      double outside = lattice[j][kmin[j] - 1];
      double inside = lattice[j][kmin[j]];
      while (inside - outside > resolution) {
        const double mid = 0.5 * (outside + inside);
        if (slice_has_inside(zone, spec, j, mid)) inside = mid;
        else outside = mid;
      }
      lo = outside;
    }
    double hi = zone[j].hi;
    if (!upper_frozen && kmax[j] < kLattice - 1) {
      double inside = lattice[j][kmax[j]];
      double outside = lattice[j][kmax[j] + 1];
      while (outside - inside > resolution) {
        const double mid = 0.5 * (inside + outside);
        if (slice_has_inside(zone, spec, j, mid)) inside = mid;
        else outside = mid;
      }
      hi = outside;
    }
    out[j] = Interval(lo, hi);
  }
  return Box(std::move(out));
}

namespace {

struct ExtContext {
  const PointFn& f;
  const DomainSpec& spec;
  const BuildParams& params;
  std::size_t leaf_count = 1;
};

enum class LeafClass { interior, straddling, empty };

// The sample-residual test is blind to slivers of the domain that carry no
// sample points (cusp tips); probe the fit on a dense uniform lattice and
// report the worst pointwise error over inside points.
double validation_max_error(const PointFn& f, const ChebInterpolant& interp,
                            const DomainSpec& spec) {
  constexpr std::size_t kProbe = 101;
  const Box& box = interp.box;
  const std::size_t d = box.dim();
  std::vector<std::vector<double>> axes(d);
  for (std::size_t j = 0; j < d; ++j) axes[j] = linspace(box[j], kProbe);
  const NdArray values = interp.eval_grid(axes);
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> x(d);
  for (std::size_t j = 0; j < d; ++j) x[j] = axes[j][0];
  double worst = 0.0;
  for (std::size_t flat = 0; flat < values.size(); ++flat) {
    if (spec.inside(x)) worst = std::max(worst, std::abs(values[flat] - f(x)));
    for (std::size_t j = d; j-- > 0;) {
      if (++idx[j] < kProbe) {
        x[j] = axes[j][idx[j]];
        break;
      }
      idx[j] = 0;
      x[j] = axes[j][0];
    }
  }
  return worst;
}

// max-norm slack allowed beyond the rms tolerance before a sliver forces a
// split
constexpr double kValidationSlack = 300.0;

LeafClass classify(const Box& domain, const DomainSpec& spec, std::size_t n,
                   std::size_t* inside_count = nullptr) {
  const GridScan scan = scan_grid(grid_axes(domain, 2 * n), spec);
  if (inside_count) *inside_count = scan.inside_points.size();
  if (scan.inside_points.empty()) return LeafClass::empty;
  if (scan.inside_points.size() == scan.total) return LeafClass::interior;
  return LeafClass::straddling;
}

// Zone bisection with boundary shrinking; empty children become EmptyLeaf.
// Forwards recursively through internal nodes; empty leaves stay put.
void split_extension(TreeNode& node, std::size_t j, ExtContext& ctx, std::size_t depth) {
  if (!node.is_leaf()) {
    split_extension(*node.child[0], j, ctx, depth + 1);
    split_extension(*node.child[1], j, ctx, depth + 1);
    return;
  }
  if (node.is_empty_leaf()) return;
  if (depth + 1 > ctx.params.max_depth)
    throw BuildLimitError("refine_extension: max tree depth exceeded", ctx.leaf_count,
                          depth + 1);
  if (ctx.leaf_count + 1 > ctx.params.max_leaves)
    throw BuildLimitError("refine_extension: max leaf count exceeded", ctx.leaf_count, depth);

  const double mid = node.zone[j].midpoint();
  node.splitdim = static_cast<int>(j);
  for (int k = 0; k < 2; ++k) {
    auto c = std::make_unique<TreeNode>();
    c->zone = node.zone;
    c->zone[j] = (k == 0) ? Interval(node.zone[j].lo, mid) : Interval(mid, node.zone[j].hi);
    c->isdone = node.isdone;
    try {
      c->zone = shrink_zone_to_domain(c->zone, ctx.spec,
                                      FrozenFace{j, k == 0});
      c->domain = extend_zone(c->zone, ctx.spec.bbox, ctx.params.overlap);
    } catch (const DegenerateLeafError&) {
      c->domain = c->zone;
      c->leaf = EmptyLeaf{};
    }
    node.child[k] = std::move(c);
  }
  node.leaf = std::monostate{};
  ++ctx.leaf_count;
}

void refine_ext_node(TreeNode& node, ExtContext& ctx, std::size_t depth) {
  if (!node.is_leaf()) {
    refine_ext_node(*node.child[0], ctx, depth + 1);
    refine_ext_node(*node.child[1], ctx, depth + 1);
    return;
  }
  if (node.is_empty_leaf()) return;

  const std::size_t n = ctx.params.samples_per_dim;
  switch (classify(node.domain, ctx.spec, n)) {
    case LeafClass::empty:
      node.leaf = EmptyLeaf{};
      return;
    case LeafClass::interior:
      // fully inside: ordinary per-dimension tensor refinement
      refine(node, SampleSource(ctx.f), ctx.params, ctx.spec.bbox);
      ctx.leaf_count = 0;  // recount lazily; see refine_extension
      return;
    case LeafClass::straddling:
      break;
  }

  LsqFit fit = [&]() -> LsqFit {
    try {
      return lsq_fit(ctx.f, node.domain, ctx.spec, n);
    } catch (const InsufficientSamplesError&) {
      // sliver leaf: too thin to fit, excluded from evaluation
      return LsqFit{CoeffTensor{}, 0, -1.0};
    }
  }();
  if (fit.residual_rms < 0.0) {
    node.leaf = EmptyLeaf{};
    return;
  }
  if (fit.residual_rms <= ctx.params.tol) {
    ChebInterpolant interp{std::move(fit.coeffs), node.domain};
    if (validation_max_error(ctx.f, interp, ctx.spec) <=
        kValidationSlack * ctx.params.tol) {
      node.leaf = ExtensionLeaf{std::move(interp), fit.sample_count, fit.residual_rms};
      return;
    }
  }
  const std::size_t d = node.zone.dim();
  for (std::size_t j = 0; j < d; ++j) split_extension(node, j, ctx, depth);
  refine_ext_node(*node.child[0], ctx, depth + 1);
  refine_ext_node(*node.child[1], ctx, depth + 1);
}

}  // namespace

void refine_extension(TreeNode& node, const PointFn& f, const DomainSpec& spec,
                      const BuildParams& params) {
  params.validate();
  ExtContext ctx{f, spec, params};
  ctx.leaf_count = node.leaf_count();
  refine_ext_node(node, ctx, 0);
}

PUFun build_extension(PointFn f, const DomainSpec& spec, const BuildParams& params) {
  params.validate();
  auto root = std::make_unique<TreeNode>();
  root->zone = spec.bbox;
  root->domain = spec.bbox;
  root->isdone.assign(spec.bbox.dim(), false);
  ExtContext ctx{f, spec, params};
  try {
    refine_ext_node(*root, ctx, 0);
  } catch (BuildLimitError& e) {
    e.partial = std::shared_ptr<TreeNode>(std::move(root));
    throw;
  }
  return PUFun(std::move(root), params, spec.bbox, spec);
}

}  // namespace chebtree
