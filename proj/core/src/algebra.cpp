#include "chebtree/algebra.hpp"

#include <cmath>

#include "chebtree/fun.hpp"

namespace chebtree {

const char* to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::add: return "add";
    case BinaryOp::sub: return "sub";
    case BinaryOp::mul: return "mul";
    case BinaryOp::div: return "div";
  }
  return "?";
}

namespace {

double combine_scalar(BinaryOp op, double a, double b, double div_floor,
                      std::span<const double> where) {
  switch (op) {
    case BinaryOp::add: return a + b;
    case BinaryOp::sub: return a - b;
    case BinaryOp::mul: return a * b;
    case BinaryOp::div:
      if (std::abs(b) < div_floor)
        throw DivisionSingularityError("divide: denominator within sqrt(tol) of zero",
                                       std::vector<double>(where.begin(), where.end()));
      return a / b;
  }
  return 0.0;
}

struct MergeEnv {
  const PUFun& f1;
  const PUFun& f2;
  BinaryOp op;
  const Box& omega;
  const BuildParams& params;
  double div_floor;
  MergeStats stats;
  std::size_t leaf_count = 1;
};

NdArray combine_grid(const PUFun& f1, const PUFun& f2, BinaryOp op, double div_floor,
                     std::span<const std::vector<double>> axes) {
  const NdArray a = f1.eval_grid(axes);
  const NdArray b = f2.eval_grid(axes);
  NdArray out(a.shape());
  const std::size_t d = axes.size();
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> x(d);
  for (std::size_t j = 0; j < d; ++j) x[j] = axes[j][0];
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    out[flat] = combine_scalar(op, a[flat], b[flat], div_floor, x);
    for (std::size_t j = d; j-- > 0;) {
      if (++idx[j] < a.shape()[j]) {
        x[j] = axes[j][idx[j]];
        break;
      }
      idx[j] = 0;
      x[j] = axes[j][0];
    }
  }
  return out;
}

// Zone alignment: in every dimension an operand node has not yet finished,
// its zone must coincide exactly with the target zone.
void check_alignment(const TreeNode& opnode, const TreeNode& target, MergeEnv& env) {
  ++env.stats.precondition_checks;
  for (std::size_t j = 0; j < target.zone.dim(); ++j) {
    if (opnode.isdone[j]) continue;
    if (!(opnode.zone[j] == target.zone[j]))
      throw MergePreconditionError("merge: operand zone out of alignment with target");
  }
}

void sample_merged_leaf(TreeNode& target, MergeEnv& env) {
  ++env.stats.leaf_merges;
  const std::size_t d = env.omega.dim();
  std::vector<ChebGrid1D> grid;
  std::vector<std::vector<double>> axes(d);
  grid.reserve(d);
  for (std::size_t j = 0; j < d; ++j) {
    grid.push_back(cheb_points(env.params.samples_per_dim, target.domain[j]));
    axes[j] = grid.back().points;
  }
  NdArray values = combine_grid(env.f1, env.f2, env.op, env.div_floor, axes);
  CoeffTensor coeffs = values_to_coeffs(values);
  target.leaf = TensorLeaf{std::move(grid), std::move(values),
                           ChebInterpolant{std::move(coeffs), target.domain}};
}

std::size_t positive_mod(int a, std::size_t d) {
  const int m = static_cast<int>(d);
  return static_cast<std::size_t>(((a % m) + m) % m);
}

void do_split(TreeNode& target, std::size_t j, MergeEnv& env, std::size_t depth) {
  SplitLimits limits{env.params.max_depth, env.params.max_leaves, &env.leaf_count};
  split(target, j, env.omega, env.params.overlap, depth, &limits);
}

// r is the most recently split dimension of the merged tree (-1 initially).
void merge_rec(const TreeNode& a, const TreeNode& b, TreeNode& target, int r, MergeEnv& env,
               std::size_t depth) {
  check_alignment(a, target, env);
  check_alignment(b, target, env);

  if (a.is_leaf() && b.is_leaf()) {
    sample_merged_leaf(target, env);
    return;
  }
  if (a.is_leaf() != b.is_leaf()) {
    const TreeNode& inner = a.is_leaf() ? b : a;
    const TreeNode& leaf = a.is_leaf() ? a : b;
    const std::size_t sd = static_cast<std::size_t>(inner.splitdim);
    do_split(target, sd, env, depth);
    merge_rec(leaf, *inner.child[0], *target.child[0], static_cast<int>(sd), env, depth + 1);
    merge_rec(leaf, *inner.child[1], *target.child[1], static_cast<int>(sd), env, depth + 1);
    return;
  }
  if (a.splitdim == b.splitdim) {
    const std::size_t sd = static_cast<std::size_t>(a.splitdim);
    do_split(target, sd, env, depth);
    merge_rec(*a.child[0], *b.child[0], *target.child[0], static_cast<int>(sd), env, depth + 1);
    merge_rec(*a.child[1], *b.child[1], *target.child[1], static_cast<int>(sd), env, depth + 1);
    return;
  }
  // Both split but in different dimensions: advance whichever operand's
  // split dimension follows r soonest in cyclic order, carrying the other
  // operand unchanged into both branches.
  const std::size_t d = target.zone.dim();
  const std::size_t ra = positive_mod(a.splitdim - r - 1, d);
  const std::size_t rb = positive_mod(b.splitdim - r - 1, d);
  const TreeNode& lead = (ra <= rb) ? a : b;
  const TreeNode& lag = (ra <= rb) ? b : a;
  const std::size_t sd = static_cast<std::size_t>(lead.splitdim);
  do_split(target, sd, env, depth);
  merge_rec(*lead.child[0], lag, *target.child[0], static_cast<int>(sd), env, depth + 1);
  merge_rec(*lead.child[1], lag, *target.child[1], static_cast<int>(sd), env, depth + 1);
}

void require_rectangular(const PUFun& f, const char* what) {
  if (f.domain())
    throw InvalidArgumentError(std::string(what) + ": rectangular approximants only");
}

}  // namespace

MergeStats merge_trees(BinaryOp op, const PUFun& f1, const PUFun& f2, TreeNode& target,
                       const BuildParams& params) {
  if (!(f1.omega() == f2.omega()))
    throw InvalidArgumentError("merge: operands live on different domain boxes");
  require_rectangular(f1, "merge");
  require_rectangular(f2, "merge");
  params.validate();
  MergeEnv env{f1, f2, op, f1.omega(), params, std::sqrt(params.tol), {}, 1};
  env.leaf_count = target.leaf_count();
  merge_rec(f1.root(), f2.root(), target, -1, env, 0);
  return env.stats;
}

PUFun apply_binary(BinaryOp op, const PUFun& f1, const PUFun& f2, const BuildParams& params) {
  if (!(f1.omega() == f2.omega()))
    throw InvalidArgumentError("apply_binary: operands live on different domain boxes");
  require_rectangular(f1, "apply_binary");
  require_rectangular(f2, "apply_binary");
  params.validate();
  const Box& omega = f1.omega();

  auto root = std::make_unique<TreeNode>();
  root->zone = omega;
  root->domain = omega;
  root->isdone.assign(omega.dim(), false);
  merge_trees(op, f1, f2, *root, params);

  const double div_floor = std::sqrt(params.tol);
  SampleSource source(
      [&f1, &f2, op, div_floor](std::span<const double> x) {
        return combine_scalar(op, f1.eval(x), f2.eval(x), div_floor, x);
      },
      [&f1, &f2, op, div_floor, d = omega.dim()](std::span<const ChebGrid1D> axes) {
        std::vector<std::vector<double>> ax(d);
        for (std::size_t j = 0; j < d; ++j) ax[j] = axes[j].points;
        return combine_grid(f1, f2, op, div_floor, ax);
      });
  try {
    refine(*root, source, params, omega);
  } catch (BuildLimitError& e) {
    e.partial = std::shared_ptr<TreeNode>(std::move(root));
    throw;
  }
  return PUFun(std::move(root), params, omega);
}

PUFun apply_unary_sample(const PUFun& fun, const std::function<double(double)>& g,
                         const BuildParams& params) {
  require_rectangular(fun, "apply_unary_sample");
  SampleSource source(
      [&fun, &g](std::span<const double> x) { return g(fun.eval(x)); },
      [&fun, &g, d = fun.dim()](std::span<const ChebGrid1D> axes) {
        std::vector<std::vector<double>> ax(d);
        for (std::size_t j = 0; j < d; ++j) ax[j] = axes[j].points;
        NdArray v = fun.eval_grid(ax);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = g(v[i]);
        return v;
      });
  return build(source, fun.omega(), params);
}

}  // namespace chebtree
