#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "chebtree/fun.hpp"
#include "chebtree/tree.hpp"
#include "test_util.hpp"

using namespace chebtree;

namespace {

Box square() { return Box({Interval(-1, 1), Interval(-1, 1)}); }

BuildParams quick_params(std::size_t n = 33, double tol = 1e-12) {
  BuildParams p;
  p.samples_per_dim = n;
  p.tol = tol;
  return p;
}

// all-leaves oracle for the blend, straight from the rearranged sum
EvalPair numden_all_leaves(const PUFun& fun, std::span<const double> x) {
  EvalPair out;
  for (const TreeNode* leaf : fun.leaves()) {
    const ChebInterpolant* ip = leaf->interpolant();
    if (!ip) continue;
    const double w = bump(leaf->domain, x);
    out.S += w;
    out.P += w * ip->eval(x);
  }
  return out;
}

}  // namespace

TEST_CASE("psi0 values and support") {
  CHECK(psi0(0.0) == 1.0);
  CHECK(psi0(1.0) == 0.0);
  CHECK(psi0(-1.0) == 0.0);
  CHECK(psi0(2.0) == 0.0);
  CHECK(psi0(-2.0) == 0.0);
  CHECK(psi0(0.5) == doctest::Approx(std::exp(-1.0 / 3.0)).epsilon(1e-12));
  CHECK(psi0(0.999) > 0.0);
  // the tail underflows to an exact zero well before |x| reaches 1
  CHECK(psi0(0.9999999) == 0.0);
}

TEST_CASE("bump factorizes over dimensions") {
  const Box box({Interval(0, 2), Interval(0, 2)});
  const std::vector<double> center = {1.0, 1.0};
  CHECK(bump(box, center) == 1.0);

  const std::vector<double> face = {0.0, 1.0};
  CHECK(bump(box, face) == 0.0);

  const std::vector<double> x = {0.5, 1.0};
  CHECK(bump(box, x) == doctest::Approx(std::exp(-1.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("numden on a single leaf") {
  const Box omega = square();
  auto f = [](std::span<const double> x) { return x[0] + 2.0 * x[1]; };
  const PUFun fun = build(f, omega, quick_params(17));
  REQUIRE(fun.leaf_count() == 1);
  const std::vector<double> x = {0.3, -0.2};
  const EvalPair sp = numden(fun.root(), x);
  const double w = bump(omega, x);
  CHECK(sp.S == doctest::Approx(w).epsilon(1e-15));
  CHECK(sp.P / sp.S == doctest::Approx(f(x)).epsilon(1e-12));
}

TEST_CASE("numden equals the all-leaves sum") {
  const Box omega = square();
  auto f = [](std::span<const double> x) { return std::atan(8.0 * (x[0] + x[1] * x[1])); };
  const PUFun fun = build(f, omega, quick_params(33, 1e-10));
  REQUIRE(fun.leaf_count() > 1);
  auto gen = testutil::rng(71);
  for (int t = 0; t < 100; ++t) {
    const auto x = testutil::random_point(gen, omega);
    const EvalPair a = numden(fun.root(), x);
    const EvalPair b = numden_all_leaves(fun, x);
    CHECK(std::abs(a.S - b.S) <= 1e-14 * std::max(1.0, std::abs(b.S)));
    CHECK(std::abs(a.P - b.P) <= 1e-14 * std::max(1.0, std::abs(b.P)));
  }
}

TEST_CASE("a point interior to exactly one domain gets that interpolant") {
  const Box omega = square();
  auto f = [](std::span<const double> x) { return std::atan(12.0 * x[0]); };
  const PUFun fun = build(f, omega, quick_params(17, 1e-10));
  REQUIRE(fun.leaf_count() > 1);
  // hunt for a point inside exactly one leaf domain
  auto gen = testutil::rng(73);
  const auto leaves = fun.leaves();
  int tested = 0;
  for (int t = 0; t < 2000 && tested < 25; ++t) {
    const auto x = testutil::random_point(gen, omega);
    const TreeNode* sole = nullptr;
    int count = 0;
    for (const TreeNode* leaf : leaves) {
      if (leaf->domain.contains(x)) {
        ++count;
        sole = leaf;
      }
    }
    if (count != 1) continue;
    ++tested;
    CHECK(fun.eval(x) == doctest::Approx(sole->interpolant()->eval(x)).epsilon(1e-14));
  }
  CHECK(tested > 0);
}

TEST_CASE("eval reproduces constants everywhere") {
  const Box omega = square();
  const PUFun fun = build([](std::span<const double>) { return -2.5; }, omega,
                          quick_params(17));
  auto gen = testutil::rng(79);
  for (int t = 0; t < 50; ++t) {
    const auto x = testutil::random_point(gen, omega);
    CHECK(fun.eval(x) == doctest::Approx(-2.5).epsilon(1e-14));
  }
  // boundary points exercise the zone fallback
  CHECK(fun.eval(std::vector<double>{1.0, 1.0}) == doctest::Approx(-2.5).epsilon(1e-13));
  CHECK(fun.eval(std::vector<double>{-1.0, 0.3}) == doctest::Approx(-2.5).epsilon(1e-13));
}

TEST_CASE("eval rejects out-of-domain points") {
  const Box omega = square();
  const PUFun fun = build([](std::span<const double> x) { return x[0]; }, omega,
                          quick_params(17));
  CHECK_THROWS_AS(fun.eval(std::vector<double>{1.5, 0.0}), OutOfDomainError);
  CHECK_THROWS_AS(fun.eval(std::vector<double>{0.0, -1.0001}), OutOfDomainError);
}

TEST_CASE("partition of unity: weights sum to one and stay in [0,1]") {
  const Box omega = square();
  auto f = [](std::span<const double> x) { return std::atan(8.0 * (x[0] + x[1] * x[1])); };
  const PUFun fun = build(f, omega, quick_params(33, 1e-10));
  const auto leaves = fun.leaves();
  auto gen = testutil::rng(83);
  int underflows = 0;
  for (int t = 0; t < 10000; ++t) {
    const auto x = testutil::random_point(gen, omega);
    double S = 0.0;
    for (const TreeNode* leaf : leaves) S += bump(leaf->domain, x);
    if (S < kDenominatorFloor) {
      // every bump underflows only in a thin skin along the boundary of
      // omega; eval must still produce the fallback value there
      ++underflows;
      double gap = 2.0;
      for (std::size_t j = 0; j < 2; ++j)
        gap = std::min({gap, x[j] - omega[j].lo, omega[j].hi - x[j]});
      CHECK(gap <= 1e-3);
      CHECK(std::isfinite(fun.eval(x)));
      continue;
    }
    double wsum = 0.0;
    for (const TreeNode* leaf : leaves) {
      const double w = bump(leaf->domain, x) / S;
      CHECK(w >= 0.0);
      CHECK(w <= 1.0 + 1e-15);
      wsum += w;
    }
    CHECK(std::abs(wsum - 1.0) <= 1e-12);
  }
  CHECK(underflows < 100);
}

TEST_CASE("weight locality") {
  const Box omega = square();
  auto f = [](std::span<const double> x) { return std::atan(10.0 * x[0] * x[1]); };
  const PUFun fun = build(f, omega, quick_params(17, 1e-8));
  const auto leaves = fun.leaves();
  auto gen = testutil::rng(89);
  for (int t = 0; t < 500; ++t) {
    const auto x = testutil::random_point(gen, omega);
    for (const TreeNode* leaf : leaves)
      if (!leaf->domain.contains(x)) CHECK(bump(leaf->domain, x) == 0.0);
  }
}

TEST_CASE("no point lies in more than 2^d leaf domains at default overlap") {
  const Box omega = square();
  auto f = [](std::span<const double> x) { return std::atan(25.0 * (x[0] + x[1])); };
  const PUFun fun = build(f, omega, quick_params(33, 1e-10));
  const auto leaves = fun.leaves();
  auto gen = testutil::rng(97);
  for (int t = 0; t < 5000; ++t) {
    const auto x = testutil::random_point(gen, omega);
    int count = 0;
    for (const TreeNode* leaf : leaves)
      if (leaf->domain.contains(x)) ++count;
    CHECK(count <= 4);
  }
}

TEST_CASE("polynomial reproduction through the blend") {
  const Box omega = square();
  auto f = [](std::span<const double> x) {
    return 0.5 + x[0] * (1.0 - 2.0 * x[1]) + 0.25 * x[0] * x[0] * x[1];
  };
  // force splitting by pairing the polynomial with a small N
  BuildParams p = quick_params(17, 1e-13);
  const PUFun fun = build(f, omega, p);
  auto gen = testutil::rng(101);
  for (int t = 0; t < 500; ++t) {
    const auto x = testutil::random_point(gen, omega);
    CHECK(std::abs(fun.eval(x) - f(x)) <= 1e-12);
  }
}

TEST_CASE("eval at a shared zone corner blends neighboring leaves") {
  const Box omega = square();
  auto f = [](std::span<const double> x) { return std::atan(9.0 * (x[0] + x[1])); };
  const PUFun fun = build(f, omega, quick_params(17, 1e-9));
  REQUIRE(fun.leaf_count() > 1);
  // zone corners live where zones meet; use child boundaries of the root
  const TreeNode& root = fun.root();
  REQUIRE_FALSE(root.is_leaf());
  const double corner_coord = root.child[0]->zone[root.splitdim].hi;
  std::vector<double> x = {corner_coord, corner_coord};
  const double s = fun.eval(x);
  CHECK(std::isfinite(s));

  // within min/max of contributing leaf interpolants
  double lo = 1e300, hi = -1e300;
  for (const TreeNode* leaf : fun.leaves()) {
    if (!leaf->domain.contains(x, kContainTol)) continue;
    const double v = leaf->interpolant()->eval(x);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(s >= lo - 1e-12);
  CHECK(s <= hi + 1e-12);
}

TEST_CASE("eval_grid agrees with pointwise eval") {
  const Box omega = square();
  auto f = [](std::span<const double> x) { return std::atan(8.0 * (x[0] + x[1] * x[1])); };
  const PUFun fun = build(f, omega, quick_params(33, 1e-10));
  std::vector<std::vector<double>> axes(2);
  for (int i = 0; i < 50; ++i) {
    axes[0].push_back(-1.0 + 2.0 * i / 49.0);
    axes[1].push_back(-1.0 + 2.0 * i / 49.0);
  }
  const NdArray grid = fun.eval_grid(axes);
  double scale = testutil::max_abs(grid);
  for (int i = 0; i < 50; ++i)
    for (int j = 0; j < 50; ++j) {
      const std::vector<double> x = {axes[0][i], axes[1][j]};
      CHECK(std::abs(grid[i * 50 + j] - fun.eval(x)) <= 1e-13 * std::max(1.0, scale));
    }
}

TEST_CASE("eval_grid on a single leaf recovers the stored values") {
  const Box omega = square();
  auto f = [](std::span<const double> x) { return std::exp(x[0]) * std::cos(x[1]); };
  const PUFun fun = build(f, omega, quick_params(33, 1e-13));
  REQUIRE(fun.leaf_count() == 1);
  const TensorLeaf* leaf = fun.root().tensor();
  REQUIRE(leaf);
  std::vector<std::vector<double>> axes = {leaf->grid[0].points, leaf->grid[1].points};
  const NdArray grid = fun.eval_grid(axes);
  REQUIRE(grid.size() == leaf->values.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(std::abs(grid[i] - leaf->values[i]) <=
          1e-13 * std::max(1.0, std::abs(leaf->values[i])));
}

TEST_CASE("differentiate handles polynomials exactly") {
  const Box omega = square();
  auto f = [](std::span<const double> x) { return x[0] * x[0] + x[1]; };
  const PUFun fun = build(f, omega, quick_params(17, 1e-13));
  const PUFun dx = fun.differentiate(0);
  auto gen = testutil::rng(103);
  for (int t = 0; t < 100; ++t) {
    const auto x = testutil::random_point(gen, omega);
    CHECK(std::abs(dx.eval(x) - 2.0 * x[0]) <= 1e-10);
  }

  const PUFun c = build([](std::span<const double>) { return 3.0; }, omega,
                        quick_params(17, 1e-13));
  const PUFun dc = c.differentiate(1);
  for (int t = 0; t < 20; ++t) {
    const auto x = testutil::random_point(gen, omega);
    CHECK(std::abs(dc.eval(x)) <= 1e-12);
  }
}

TEST_CASE("differentiate matches analytic partials") {
  const Box omega = square();
  auto f = [](std::span<const double> x) { return std::sin(3.0 * x[0]) * std::cos(2.0 * x[1]); };
  const PUFun fun = build(f, omega, quick_params(33, 1e-12));
  const PUFun dy = fun.differentiate(1);
  CHECK(dy.leaf_count() == fun.leaf_count());
  auto gen = testutil::rng(107);
  for (int t = 0; t < 1000; ++t) {
    const auto x = testutil::random_point(gen, omega);
    const double want = -2.0 * std::sin(3.0 * x[0]) * std::sin(2.0 * x[1]);
    CHECK(std::abs(dy.eval(x) - want) <= 1e-8);
  }
}

TEST_CASE("derivative approximant satisfies the leafwise error bound") {
  const Box omega = square();
  auto f = [](std::span<const double> x) { return std::sin(3.0 * x[0]) * std::cos(2.0 * x[1]); };
  auto dfdx = [](std::span<const double> x) { return 3.0 * std::cos(3.0 * x[0]) * std::cos(2.0 * x[1]); };
  const PUFun fun = build(f, omega, quick_params(33, 1e-12));
  const PUFun dx = fun.differentiate(0);
  const auto leaves = dx.leaves();
  auto gen = testutil::rng(109);
  for (int t = 0; t < 200; ++t) {
    const auto x = testutil::random_point(gen, omega);
    double S = 0.0;
    for (const TreeNode* leaf : leaves) S += bump(leaf->domain, x);
    REQUIRE(S > 0.0);

    // the approximant IS the weighted sum of leaf derivative interpolants
    double weighted = 0.0, bound = 0.0;
    for (const TreeNode* leaf : leaves) {
      const double w = bump(leaf->domain, x) / S;
      if (w == 0.0) continue;
      const double dleaf = leaf->interpolant()->eval(x);
      weighted += w * dleaf;
      bound += w * std::abs(dleaf - dfdx(x));
    }
    const double s = dx.eval(x);
    CHECK(std::abs(s - weighted) <= 1e-12 * std::max(1.0, std::abs(weighted)));
    CHECK(std::abs(s - dfdx(x)) <= bound + 1e-12);
  }
}

TEST_CASE("integrate: polynomial, constant, and separable Gaussian") {
  const Box omega = square();
  auto poly = [](std::span<const double> x) { return x[0] * x[0] * x[1] * x[1]; };
  const PUFun fp = build(poly, omega, quick_params(17, 1e-13));
  CHECK(std::abs(fp.integrate() - 4.0 / 9.0) <= 1e-12);

  const PUFun fc = build([](std::span<const double>) { return 2.75; }, omega,
                         quick_params(17, 1e-13));
  CHECK(fc.integrate() == doctest::Approx(2.75 * 4.0).epsilon(1e-13));

  const double a1 = 5.0, a2 = 10.0, u1 = 0.75, u2 = 0.25;
  auto gauss = [&](std::span<const double> x) {
    return std::exp(-(a1 * a1 * (x[0] - u1) * (x[0] - u1) +
                      a2 * a2 * (x[1] - u2) * (x[1] - u2)));
  };
  const PUFun fg = build(gauss, omega, quick_params(65, 1e-13));
  auto erf_piece = [](double a, double u) {
    const double spi = std::sqrt(M_PI);
    return spi / (2.0 * a) * (std::erf(a * (1.0 - u)) - std::erf(a * (-1.0 - u)));
  };
  const double exact = erf_piece(a1, u1) * erf_piece(a2, u2);
  CHECK(std::abs(fg.integrate() - exact) <= 1e-11 * std::abs(exact));
}

TEST_CASE("one-dimensional approximants work end to end") {
  const Box omega({Interval(-2, 3)});
  auto f = [](std::span<const double> x) { return std::atan(12.0 * x[0]) + 0.1 * x[0] * x[0]; };
  const PUFun fun = build(f, omega, quick_params(33, 1e-12));
  auto gen = testutil::rng(113);
  for (int t = 0; t < 200; ++t) {
    const auto x = testutil::random_point(gen, omega);
    CHECK(std::abs(fun.eval(x) - f(x)) <= 1e-11);
  }
  const PUFun d = fun.differentiate(0);
  for (int t = 0; t < 100; ++t) {
    const auto x = testutil::random_point(gen, omega);
    const double want = 12.0 / (1.0 + 144.0 * x[0] * x[0]) + 0.2 * x[0];
    CHECK(std::abs(d.eval(x) - want) <= 1e-8);
  }
  // analytic: atan integral by parts plus the cubic term
  auto anti = [](double x) {
    return x * std::atan(12.0 * x) - std::log(1.0 + 144.0 * x * x) / 24.0 +
           0.1 * x * x * x / 3.0;
  };
  CHECK(fun.integrate() == doctest::Approx(anti(3.0) - anti(-2.0)).epsilon(1e-12));

  std::vector<std::vector<double>> axes(1);
  for (int i = 0; i <= 100; ++i) axes[0].push_back(-2.0 + 5.0 * i / 100.0);
  const NdArray grid = fun.eval_grid(axes);
  for (int i = 0; i <= 100; ++i) {
    const std::vector<double> x = {axes[0][i]};
    CHECK(std::abs(grid[i] - fun.eval(x)) <= 1e-13);
  }
}

TEST_CASE("three-dimensional approximants integrate and differentiate") {
  const Box omega({Interval(-1, 1), Interval(0, 2), Interval(-1, 0)});
  auto f = [](std::span<const double> x) {
    return std::sin(x[0]) * std::exp(0.5 * x[1]) * (1.0 + x[2] * x[2]);
  };
  BuildParams p = quick_params(17, 1e-12);
  const PUFun fun = build(f, omega, p);
  auto gen = testutil::rng(127);
  for (int t = 0; t < 200; ++t) {
    const auto x = testutil::random_point(gen, omega);
    CHECK(std::abs(fun.eval(x) - f(x)) <= 1e-10);
  }
  // separable analytic integral
  const double ix = std::cos(-1.0) - std::cos(1.0);  // = 0: sin is odd
  const double iy = 2.0 * (std::exp(1.0) - 1.0);
  const double iz = 4.0 / 3.0;
  CHECK(std::abs(fun.integrate() - ix * iy * iz) <= 1e-12);

  const PUFun dz = fun.differentiate(2);
  for (int t = 0; t < 100; ++t) {
    const auto x = testutil::random_point(gen, omega);
    const double want = std::sin(x[0]) * std::exp(0.5 * x[1]) * 2.0 * x[2];
    CHECK(std::abs(dz.eval(x) - want) <= 1e-9);
  }
}

TEST_CASE("eval_grid handles boundary points through the fallback") {
  const Box omega = square();
  auto f = [](std::span<const double> x) { return std::cos(x[0]) * std::exp(x[1]); };
  const PUFun fun = build(f, omega, quick_params(33, 1e-12));
  std::vector<std::vector<double>> axes(2);
  for (int i = 0; i < 21; ++i) {
    axes[0].push_back(-1.0 + 2.0 * i / 20.0);
    axes[1].push_back(-1.0 + 2.0 * i / 20.0);
  }
  const NdArray grid = fun.eval_grid(axes);
  for (int i = 0; i < 21; ++i)
    for (int j = 0; j < 21; ++j) {
      const std::vector<double> x = {axes[0][i], axes[1][j]};
      CHECK(std::abs(grid[i * 21 + j] - f(x)) <= 1e-10);
    }
}
