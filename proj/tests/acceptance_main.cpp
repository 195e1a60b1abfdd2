// Acceptance harness: runs every gate criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exit code is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <random>
#include <vector>

#include "chebtree/algebra.hpp"
#include "chebtree/extension.hpp"
#include "chebtree/fun.hpp"
#include "functions.hpp"
#include "suites.hpp"

using namespace chebtree;
using pubench::RunReport;
using pubench::TestFunction;

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
  bool ok = true;
  std::vector<std::string> notes;

  void check(bool cond, const std::string& what) {
    char line[512];
    std::snprintf(line, sizeof(line), "    %-6s %s", cond ? "ok" : "FAIL", what.c_str());
    notes.push_back(line);
    if (!cond) ok = false;
  }
  void note(const std::string& what) { notes.push_back("    info   " + what); }
};

struct Expectation {
  const char* name;
  double paper_error;
  std::size_t paper_points;
  bool gate_points;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

RunReport run_row(const char* name, const BuildParams& params, std::size_t grid) {
  const TestFunction* fn = pubench::find_function(name);
  return pubench::execute_case(*fn, params, grid, /*warmup=*/false);
}

void check_row(Criterion& c, const RunReport& row, const Expectation& e) {
  c.check(row.status == "ok", fmt("%s builds (%s)", e.name, row.status.c_str()));
  if (row.status != "ok") return;
  c.check(row.max_error <= 100.0 * e.paper_error,
          fmt("%s error %.3g <= %.3g", e.name, row.max_error, 100.0 * e.paper_error));
  if (e.gate_points) {
    const bool in_window = 4 * row.stored_points >= e.paper_points &&
                           row.stored_points <= 4 * e.paper_points;
    c.check(in_window, fmt("%s stored points %zu within 4x of %zu", e.name, row.stored_points,
                           e.paper_points));
  } else {
    c.note(fmt("%s stored points %zu (reference %zu)", e.name, row.stored_points,
               e.paper_points));
  }
}

// ---------------------------------------------------------------- criterion 1
Criterion criterion1_table1() {
  Criterion c;
  const auto t0 = Clock::now();
  BuildParams params = BuildParams::defaults_for(2);  // N=129, tol 1e-16
  const Expectation rows[] = {
      {"franke", 1.33e-15, 9270, true},
      {"log-cliff", 1.16e-15, 69800, true},
      {"arctan-cliff", 1.83e-14, 917515, true},
      {"runge-spike", 1.86e-15, 117056, true},
      {"genz-oscillatory-2d", 2.300e-14, 972, true},
      {"genz-product-peak-2d", 2.01e-15, 21232, true},
      {"genz-corner-peak-2d", 3.33e-16, 25, true},
      {"genz-gaussian-2d", 7.77e-16, 1862, true},
  };
  for (const auto& e : rows) check_row(c, run_row(e.name, params, 200), e);
  const double elapsed = seconds_since(t0);
  c.check(elapsed < 60.0, fmt("total runtime %.1f s < 60 s", elapsed));
  return c;
}

// ---------------------------------------------------------------- criterion 2
Criterion criterion2_table2(bool scaled_3d) {
  Criterion c;
  const auto t0 = Clock::now();
  BuildParams params = BuildParams::defaults_for(3);  // N=65, tol 1e-16
  const Expectation rows[] = {
      {"genz-oscillatory-3d", 3.16e-14, 561495, false},
      {"genz-product-peak-3d", 2.37e-15, 7751626, false},
      {"genz-corner-peak-3d", 5.58e-16, 216, false},
      {"genz-gaussian-3d", 1.45e-15, 293305, false},
      {"cosh-ridge-3d", 2.00e-15, 3450018, false},
      {"arctan-ridge-3d", 1.95e-15, 1132326, true},
  };
  for (const auto& e : rows) {
    const bool heavy = std::strcmp(e.name, "genz-gaussian-3d") == 0 ||
                       std::strcmp(e.name, "genz-product-peak-3d") == 0;
    if (scaled_3d && heavy) {
      BuildParams scaled = params;
      scaled.tol = 1e-12;
      const RunReport row = run_row(e.name, scaled, 50);
      c.check(row.status == "ok", fmt("%s builds scaled (%s)", e.name, row.status.c_str()));
      if (row.status == "ok")
        c.check(row.max_error <= 1e-10,
                fmt("%s (scaled, tol 1e-12) error %.3g <= 1e-10", e.name, row.max_error));
      continue;
    }
    check_row(c, run_row(e.name, params, 50), e);
  }
  const double elapsed = seconds_since(t0);
  c.check(elapsed < 300.0, fmt("total runtime %.1f s < 300 s", elapsed));
  return c;
}

// ---------------------------------------------------------------- criterion 3
Criterion criterion3_table3(bool with_g3) {
  Criterion c;
  BuildParams params;
  params.samples_per_dim = 17;
  params.tol = 1e-10;

  struct ExtRow {
    const char* name;
    double bound;
    bool order_of_magnitude;
  };
  // disk/diamond rows at 100x the reference; astroid region is a
  // configurable stand-in, so its rows get order-of-magnitude slack (1000x)
  const ExtRow rows[] = {
      {"g1-disk", 100 * 5.44e-15, false},  {"g2-disk", 100 * 2.40e-10, false},
      {"g4-disk", 100 * 7.49e-11, false},  {"g2-diamond", 100 * 2.40e-11, false},
      {"g4-diamond", 100 * 1.45e-11, false},
      {"g1-astroid", 1000 * 2.01e-08, true},
      {"g2-astroid", 1000 * 2.14e-10, true},
      {"g4-astroid", 1000 * 1.09e-11, true},
  };

  // the fully spelled-out diamond case
  {
    const RunReport row = run_row("g1-diamond", params, 200);
    c.check(row.status == "ok", fmt("g1-diamond builds (%s)", row.status.c_str()));
    if (row.status == "ok") {
      c.check(row.stored_points == 289,
              fmt("g1-diamond stores exactly 289 points (got %zu)", row.stored_points));
      c.check(row.leaf_count == 1, fmt("g1-diamond is a single leaf (got %zu)", row.leaf_count));
      c.check(row.max_error <= 1e-8, fmt("g1-diamond error %.3g <= 1e-8", row.max_error));
    }
  }
  for (const auto& e : rows) {
    const RunReport row = run_row(e.name, params, 200);
    c.check(row.status == "ok", fmt("%s builds (%s)", e.name, row.status.c_str()));
    if (row.status != "ok") continue;
    c.check(row.max_error <= e.bound,
            fmt("%s interior error %.3g <= %.3g%s", e.name, row.max_error, e.bound,
                e.order_of_magnitude ? " (order-of-magnitude gate)" : ""));
  }
  if (with_g3) {
    const ExtRow g3rows[] = {{"g3-disk", 100 * 4.44e-11, false},
                             {"g3-diamond", 100 * 2.35e-11, false},
                             {"g3-astroid", 1000 * 1.67e-10, true}};
    for (const auto& e : g3rows) {
      const RunReport row = run_row(e.name, params, 200);
      c.check(row.status == "ok", fmt("%s builds (%s)", e.name, row.status.c_str()));
      if (row.status == "ok")
        c.check(row.max_error <= e.bound,
                fmt("%s interior error %.3g <= %.3g", e.name, row.max_error, e.bound));
    }
  } else {
    c.note("g3 rows skipped (long-running; pass --with-g3 to include)");
  }
  return c;
}

// ---------------------------------------------------------------- criterion 4
Criterion criterion4_rotate2d() {
  Criterion c;
  BuildParams params = BuildParams::defaults_for(2);
  double tmin = 1e300, tmax = 0.0, worst = 0.0;
  bool all_ok = true;
  for (int k = 0; k < 33; ++k) {
    const double angle = (M_PI / 4.0) * static_cast<double>(k) / 32.0;
    TestFunction fn = pubench::plane_wave_2d(angle);
    const RunReport row = pubench::execute_case(fn, params, 200, /*warmup=*/false);
    if (row.status != "ok") {
      all_ok = false;
      c.check(false, fmt("angle %.4f builds (%s)", angle, row.status.c_str()));
      continue;
    }
    worst = std::max(worst, row.max_error);
    tmin = std::min(tmin, row.build_time_s);
    tmax = std::max(tmax, row.build_time_s);
    if (row.max_error > 1e-11)
      c.check(false, fmt("angle %.4f error %.3g <= 1e-11", angle, row.max_error));
  }
  c.check(all_ok && worst <= 1e-11,
          fmt("all 33 angles build with error <= 1e-11 (worst %.3g)", worst));
  c.note(fmt("build-time max/min ratio %.2f (reported, not asserted)", tmax / tmin));
  return c;
}

// ---------------------------------------------------------------- criterion 5
Criterion criterion5_properties() {
  Criterion c;
  std::mt19937_64 gen(424242);
  const Box square({Interval(-1, 1), Interval(-1, 1)});

  auto random_point = [&gen](const Box& box) {
    std::vector<double> x(box.dim());
    for (std::size_t j = 0; j < box.dim(); ++j)
      x[j] = std::uniform_real_distribution<double>(box[j].lo, box[j].hi)(gen);
    return x;
  };

  // --- partition of unity
  {
    BuildParams p;
    p.samples_per_dim = 33;
    p.tol = 1e-12;
    const PUFun fun = build(
        [](std::span<const double> x) { return std::atan(8.0 * (x[0] + x[1] * x[1])); }, square,
        p);
    const auto leaves = fun.leaves();
    std::size_t bad = 0, skin = 0;
    for (int t = 0; t < 10000; ++t) {
      const auto x = random_point(square);
      double S = 0.0;
      for (const TreeNode* leaf : leaves) S += bump(leaf->domain, x);
      if (S < kDenominatorFloor) {
        // all bumps underflow only in a thin skin along the boundary
        ++skin;
        double gap = 2.0;
        for (std::size_t j = 0; j < 2; ++j)
          gap = std::min({gap, x[j] - square[j].lo, square[j].hi - x[j]});
        if (gap > 1e-3 || !std::isfinite(fun.eval(x))) ++bad;
        continue;
      }
      double wsum = 0.0;
      bool in_range = true;
      for (const TreeNode* leaf : leaves) {
        const double w = bump(leaf->domain, x) / S;
        in_range = in_range && w >= 0.0 && w <= 1.0 + 1e-15;
        wsum += w;
      }
      if (!in_range || std::abs(wsum - 1.0) > 1e-12) ++bad;
    }
    c.check(bad == 0, fmt("partition of unity holds at 10^4 random points "
                          "(%zu boundary-skin points served by the fallback)",
                          skin));
  }

  // --- oracle equivalence: recursive numden vs all-leaves sum; grid vs pointwise
  {
    BuildParams p;
    p.samples_per_dim = 33;
    p.tol = 1e-10;
    const PUFun fun = build(
        [](std::span<const double> x) { return std::atan(10.0 * (x[0] * x[0] + x[1])); }, square,
        p);
    const auto leaves = fun.leaves();
    bool num_ok = true;
    for (int t = 0; t < 1000; ++t) {
      const auto x = random_point(square);
      const EvalPair a = numden(fun.root(), x);
      EvalPair b;
      for (const TreeNode* leaf : leaves) {
        const double w = bump(leaf->domain, x);
        b.S += w;
        if (w > 0.0) b.P += w * leaf->interpolant()->eval(x);
      }
      if (std::abs(a.S - b.S) > 1e-14 * std::max(1.0, std::abs(b.S)) ||
          std::abs(a.P - b.P) > 1e-14 * std::max(1.0, std::abs(b.P)))
        num_ok = false;
    }
    c.check(num_ok, "recursive numerator/denominator equals the all-leaves sum (1e-14)");

    std::vector<std::vector<double>> axes(2);
    for (int i = 0; i < 50; ++i) {
      axes[0].push_back(-1.0 + 2.0 * i / 49.0);
      axes[1].push_back(-1.0 + 2.0 * i / 49.0);
    }
    const NdArray grid = fun.eval_grid(axes);
    double gap = 0.0, scale = 1.0;
    for (int i = 0; i < 50; ++i)
      for (int j = 0; j < 50; ++j) {
        const std::vector<double> x = {axes[0][i], axes[1][j]};
        const double pv = fun.eval(x);
        gap = std::max(gap, std::abs(grid[i * 50 + j] - pv));
        scale = std::max(scale, std::abs(pv));
      }
    c.check(gap <= 1e-13 * scale, fmt("grid evaluation equals pointwise (gap %.3g)", gap));
  }

  // --- quadrature
  {
    const TestFunction* genz = pubench::find_function("genz-gaussian-2d");
    BuildParams p = BuildParams::defaults_for(2);
    const PUFun fg = build(genz->f, genz->omega, p);
    const double got = fg.integrate();
    const double want = *genz->analytic_integral;
    c.check(std::abs(got - want) <= 1e-11 * std::abs(want),
            fmt("separable Gaussian integral matches erf product (rel %.3g)",
                std::abs(got - want) / std::abs(want)));

    BuildParams pq;
    pq.samples_per_dim = 17;
    pq.tol = 1e-13;
    const PUFun fp = build(
        [](std::span<const double> x) { return x[0] * x[0] * x[1] * x[1]; }, square, pq);
    c.check(std::abs(fp.integrate() - 4.0 / 9.0) <= 1e-12,
            fmt("x^2 y^2 integrates to 4/9 (err %.3g)", std::abs(fp.integrate() - 4.0 / 9.0)));
  }

  // --- differentiation
  {
    BuildParams p;
    p.samples_per_dim = 33;
    p.tol = 1e-13;
    auto f = [](std::span<const double> x) { return std::sin(3 * x[0]) * std::cos(2 * x[1]); };
    const PUFun fun = build(f, square, p);
    const PUFun dy = fun.differentiate(1);
    double worst_analytic = 0.0, worst_fd = 0.0;
    const double h = 1e-6;
    for (int t = 0; t < 1000; ++t) {
      std::vector<double> x(2);
      for (int j = 0; j < 2; ++j)
        x[j] = std::uniform_real_distribution<double>(-0.99, 0.99)(gen);
      const double s = dy.eval(x);
      worst_analytic =
          std::max(worst_analytic, std::abs(s + 2.0 * std::sin(3 * x[0]) * std::sin(2 * x[1])));
      std::vector<double> xp = x, xm = x;
      xp[1] += h;
      xm[1] -= h;
      worst_fd = std::max(worst_fd, std::abs(s - (fun.eval(xp) - fun.eval(xm)) / (2 * h)));
    }
    c.check(worst_analytic <= 1e-8,
            fmt("derivative vs analytic partial %.3g <= 1e-8", worst_analytic));
    c.check(worst_fd <= 1e-6, fmt("derivative vs centered differences %.3g <= 1e-6", worst_fd));
  }

  // --- merging
  {
    BuildParams p;
    p.samples_per_dim = 17;
    p.tol = 1e-8;
    std::size_t alignment_checks = 0;
    bool merge_ok = true;
    std::string merge_err;
    for (int trial = 0; trial < 100 && merge_ok; ++trial) {
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      const double c1 = 2.0 + 12.0 * unit(gen), c2 = 2.0 + 12.0 * unit(gen);
      const double x0 = -0.5 + unit(gen), y0 = -0.5 + unit(gen);
      const double angle = unit(gen) * M_PI / 2.0;
      const int shape = static_cast<int>(gen() % 3);
      auto f1 = [=](std::span<const double> x) {
        switch (shape) {
          case 0: return std::atan(c1 * (x[0] - x0));
          case 1:
            return std::exp(-c1 * ((x[0] - x0) * (x[0] - x0) + (x[1] - y0) * (x[1] - y0)));
          default: return std::atan(c1 * (std::cos(angle) * x[0] + std::sin(angle) * x[1]));
        }
      };
      auto f2 = [=](std::span<const double> x) {
        return std::atan(c2 * (x[1] - y0)) + 0.1 * x[0];
      };
      try {
        const PUFun a = build(f1, square, p);
        const PUFun b = build(f2, square, p);
        TreeNode target;
        target.zone = square;
        target.domain = square;
        target.isdone = {false, false};
        const MergeStats stats =
            merge_trees(trial % 2 ? BinaryOp::add : BinaryOp::mul, a, b, target, p);
        alignment_checks += stats.precondition_checks;
        // merged leaf zones refine both operand zone sets
        const PUFun merged(target.clone(), p, square);
        for (const PUFun* op : {&a, &b})
          for (const TreeNode* leaf : merged.leaves()) {
            int count = 0;
            for (const TreeNode* opl : op->leaves())
              if (opl->zone.contains_box(leaf->zone, 1e-12)) ++count;
            if (count != 1) {
              merge_ok = false;
              merge_err = "merged zone not nested in exactly one operand zone";
            }
          }
      } catch (const std::exception& e) {
        merge_ok = false;
        merge_err = e.what();
      }
    }
    c.check(merge_ok && alignment_checks > 0,
            fmt("100 randomized merges: zone alignment asserted %zu times, refinement nested (%s)",
                alignment_checks, merge_ok ? "ok" : merge_err.c_str()));

    // the reference pair of cliff functions
    BuildParams pd = BuildParams::defaults_for(2);
    auto fig1 = [](std::span<const double> x) {
      return std::atan(100.0 * (x[0] * x[0] + x[1]));
    };
    auto fig2 = [](std::span<const double> x) {
      return std::atan(100.0 * (x[0] + x[1] * x[1]));
    };
    const PUFun a = build(fig1, square, pd);
    const PUFun b = build(fig2, square, pd);
    const PUFun sum = apply_binary(BinaryOp::add, a, b, pd);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
      const auto x = random_point(square);
      worst = std::max(worst, std::abs(sum.eval(x) - (fig1(x) + fig2(x))));
    }
    c.check(worst <= 1e-10, fmt("(f+g) matches f+g on the cliff pair (%.3g <= 1e-10)", worst));
  }

  // --- least squares reproduction
  {
    bool ok = true;
    for (const char* name : {"disk", "diamond"}) {
      const DomainSpec spec = *domain_by_name(name);
      auto poly = [](std::span<const double> x) {
        double acc = 0.0, tx = 1.0;
        for (int i = 0; i < 17; i += 4) {
          acc += tx * (0.25 - 0.5 * x[1]);
          tx *= x[0] * x[0] * 0.9;
        }
        return acc + 0.125 * std::pow(x[1], 16);
      };
      const LsqFit fit = lsq_fit(poly, spec.bbox, spec, 17);
      if (fit.residual_rms > 1e-12) ok = false;
    }
    c.check(ok, "degree<17 tensor polynomials reproduced on disk and diamond (residual <= 1e-12)");
  }
  return c;
}

// ---------------------------------------------------------------- criterion 6
Criterion criterion6_grid_cost() {
  Criterion c;
  const std::size_t N = 129, M = 200;
  std::mt19937_64 gen(7);
  NdArray data({N, N});
  for (std::size_t i = 0; i < data.size(); ++i)
    data[i] = std::uniform_real_distribution<double>(-1.0, 1.0)(gen);
  ChebInterpolant leaf{CoeffTensor{data}, Box({Interval(-1, 1), Interval(-1, 1)})};
  std::vector<std::vector<double>> axes(2);
  for (std::size_t i = 0; i < M; ++i)
    axes[0].push_back(-1.0 + 2.0 * static_cast<double>(i) / (M - 1));
  axes[1] = axes[0];
  std::size_t madds = 0;
  leaf.eval_grid(axes, &madds);
  const std::size_t bound = 2 * M * N * (M + N);
  const std::size_t naive = M * M * N * N;
  c.check(madds <= bound, fmt("counted multiply-adds %zu <= 2MN(M+N) = %zu", madds, bound));
  c.check(madds * 10 <= naive, fmt("counted multiply-adds %zu at least 10x below M^2N^2 = %zu",
                                   madds, naive));
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  bool with_g3 = false, scaled_3d = false;
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--with-g3") == 0) with_g3 = true;
    else if (std::strcmp(argv[i], "--scaled-3d") == 0) scaled_3d = true;
    else if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
  }

  struct Entry {
    int id;
    const char* title;
    Criterion (*run)();
  };

  int failures = 0;
  const auto report = [&failures](int id, const char* title, const Criterion& c) {
    std::printf("[%s] criterion %d: %s\n", c.ok ? "PASS" : "FAIL", id, title);
    for (const auto& line : c.notes) std::printf("%s\n", line.c_str());
    std::fflush(stdout);
    if (!c.ok) ++failures;
  };

  if (!only || only == 1) report(1, "2-D hyperrectangle suite reproduction", criterion1_table1());
  if (!only || only == 2)
    report(2, "3-D hyperrectangle suite reproduction", criterion2_table2(scaled_3d));
  if (!only || only == 3)
    report(3, "nonrectangular-domain suite reproduction", criterion3_table3(with_g3));
  if (!only || only == 4) report(4, "anisotropy sweep", criterion4_rotate2d());
  if (!only || only == 5) report(5, "property suite", criterion5_properties());
  if (!only || only == 6) report(6, "grid-evaluation cost bound", criterion6_grid_cost());

  std::printf("%d criterion(s) failed\n", failures);
  return failures;
}
