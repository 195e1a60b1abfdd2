#include "suites.hpp"

#include <chrono>
#include <cmath>
#include <future>
#include <random>

#include "chebtree/algebra.hpp"
#include "chebtree/extension.hpp"
#include "chebtree/fun.hpp"

namespace pubench {

using namespace chebtree;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<std::vector<double>> uniform_axes(const Box& box, std::size_t per_dim) {
  std::vector<std::vector<double>> axes(box.dim());
  for (std::size_t j = 0; j < box.dim(); ++j) {
    axes[j].resize(per_dim);
    for (std::size_t i = 0; i < per_dim; ++i)
      axes[j][i] = box[j].lo + box[j].width() * static_cast<double>(i) /
                                   static_cast<double>(per_dim - 1);
    axes[j].front() = box[j].lo;
    axes[j].back() = box[j].hi;
  }
  return axes;
}

PUFun build_case(const TestFunction& fn, const BuildParams& params) {
  if (fn.domain_name) {
    const auto spec = domain_by_name(*fn.domain_name);
    if (!spec) throw InvalidArgumentError("unknown domain: " + *fn.domain_name);
    return build_extension(fn.f, *spec, params);
  }
  return build(fn.f, fn.omega, params);
}

}  // namespace

// Error relative to the grid maximum of |f| (floored at 1), which is the
// scale the reference results are quoted in.
double max_error_on_grid(const PUFun& fun, const PointFn& f, std::size_t per_dim) {
  const auto axes = uniform_axes(fun.omega(), per_dim);
  const NdArray values = fun.eval_grid(axes);
  const std::size_t d = fun.dim();
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> x(d);
  for (std::size_t j = 0; j < d; ++j) x[j] = axes[j][0];
  double worst = 0.0;
  double scale = 1.0;
  for (std::size_t flat = 0; flat < values.size(); ++flat) {
    if (!std::isnan(values[flat])) {
      const double fx = f(x);
      worst = std::max(worst, std::abs(values[flat] - fx));
      scale = std::max(scale, std::abs(fx));
    }
    for (std::size_t j = d; j-- > 0;) {
      if (++idx[j] < values.shape()[j]) {
        x[j] = axes[j][idx[j]];
        break;
      }
      idx[j] = 0;
      x[j] = axes[j][0];
    }
  }
  return worst / scale;
}

BuildParams suite_params(const std::string& suite, std::size_t d, const SuiteOptions& opts) {
  BuildParams p = BuildParams::defaults_for(d);
  if (suite == "table3") {
    p.samples_per_dim = 17;
    p.tol = 1e-10;
  }
  if (opts.samples_per_dim) p.samples_per_dim = *opts.samples_per_dim;
  if (opts.tol) p.tol = *opts.tol;
  if (opts.overlap) p.overlap = *opts.overlap;
  return p;
}

RunReport execute_case(const TestFunction& fn, const BuildParams& params,
                       std::size_t error_grid_per_dim, bool warmup) {
  RunReport row;
  row.function = fn.name;
  row.params_echo = fn.params_echo;
  try {
    if (warmup) {
      const auto t0 = Clock::now();
      const PUFun scratch = build_case(fn, params);
      row.warmup_build_time_s = seconds_since(t0);
      (void)scratch;
    }
    const auto t1 = Clock::now();
    const PUFun fun = build_case(fn, params);
    row.build_time_s = seconds_since(t1);

    const auto t2 = Clock::now();
    row.max_error = max_error_on_grid(fun, fn.f, error_grid_per_dim);
    row.eval_time_s = seconds_since(t2);

    row.stored_points = fun.stored_points();
    row.leaf_count = fun.leaf_count();
    row.tree_depth = fun.depth();
  } catch (const BuildLimitError& e) {
    row.status = std::string("build-limit: ") + e.what();
  } catch (const std::exception& e) {
    row.status = std::string("failed: ") + e.what();
  }
  return row;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"table1", "table2", "table3",
                                                 "rotate2d", "rotate3d", "arith"};
  return names;
}

namespace {

std::vector<RunReport> run_cases(const std::vector<TestFunction>& cases,
                                 const BuildParams& params, std::size_t error_grid,
                                 const SuiteOptions& opts) {
  std::vector<RunReport> rows;
  if (opts.parallel) {
    std::vector<std::future<RunReport>> futures;
    futures.reserve(cases.size());
    for (const auto& fn : cases)
      futures.push_back(std::async(std::launch::async, [&fn, &params, error_grid, &opts] {
        return execute_case(fn, params, error_grid, opts.warmup);
      }));
    for (auto& fut : futures) rows.push_back(fut.get());
  } else {
    for (const auto& fn : cases) rows.push_back(execute_case(fn, params, error_grid, opts.warmup));
  }
  return rows;
}

std::vector<RunReport> run_table1(const SuiteOptions& opts) {
  const char* names[] = {"log-cliff",           "arctan-cliff",       "runge-spike",
                         "franke",              "genz-oscillatory-2d", "genz-product-peak-2d",
                         "genz-corner-peak-2d", "genz-gaussian-2d"};
  std::vector<TestFunction> cases;
  for (const char* n : names) cases.push_back(*find_function(n));
  return run_cases(cases, suite_params("table1", 2, opts), 200, opts);
}

std::vector<RunReport> run_table2(const SuiteOptions& opts) {
  const char* names[] = {"genz-oscillatory-3d", "genz-product-peak-3d", "genz-corner-peak-3d",
                         "genz-gaussian-3d",    "cosh-ridge-3d",        "arctan-ridge-3d"};
  std::vector<TestFunction> cases;
  for (const char* n : names) cases.push_back(*find_function(n));
  return run_cases(cases, suite_params("table2", 3, opts), 50, opts);
}

std::vector<RunReport> run_table3(const SuiteOptions& opts) {
  std::vector<TestFunction> cases;
  for (const char* base : {"g1", "g2", "g3", "g4"}) {
    if (!opts.with_g3 && std::string(base) == "g3") continue;
    for (const char* dom : {"disk", "diamond", "astroid"})
      cases.push_back(*find_function(std::string(base) + "-" + dom));
  }
  return run_cases(cases, suite_params("table3", 2, opts), 200, opts);
}

std::vector<RunReport> run_rotate2d(const SuiteOptions& opts) {
  std::vector<TestFunction> cases;
  for (int k = 0; k < 33; ++k) {
    const double t = (M_PI / 4.0) * static_cast<double>(k) / 32.0;
    TestFunction fn = plane_wave_2d(t);
    fn.name = "rotate2d[" + std::to_string(k) + "]";
    cases.push_back(std::move(fn));
  }
  return run_cases(cases, suite_params("rotate2d", 2, opts), 200, opts);
}

std::vector<RunReport> run_rotate3d(const SuiteOptions& opts) {
  std::vector<TestFunction> cases;
  const int steps = 5;
  for (int i = 0; i < steps; ++i)
    for (int j = 0; j < steps; ++j) {
      const double p = (M_PI / 4.0) * static_cast<double>(i) / (steps - 1);
      const double t = (M_PI / 4.0) * static_cast<double>(j) / (steps - 1);
      TestFunction fn = plane_wave_3d(p, t);
      fn.name = "rotate3d[" + std::to_string(i) + "," + std::to_string(j) + "]";
      cases.push_back(std::move(fn));
    }
  return run_cases(cases, suite_params("rotate3d", 3, opts), 50, opts);
}

std::vector<RunReport> run_arith(const SuiteOptions& opts) {
  const BuildParams params = suite_params("arith", 2, opts);
  std::vector<RunReport> rows;
  const TestFunction base = *find_function("arctan-ridge-x");
  std::mt19937_64 gen(opts.seed ? opts.seed : 20240811u);

  for (int k = 0; k < 9; ++k) {
    const double t = (M_PI / 4.0) * static_cast<double>(k) / 8.0;
    const TestFunction wave = plane_wave_2d(t);
    for (const BinaryOp op : {BinaryOp::add, BinaryOp::mul}) {
      RunReport row;
      row.function = std::string("arith-") + to_string(op) + "[" + std::to_string(k) + "]";
      row.params_echo = wave.params_echo;
      try {
        const PUFun f1 = build(base.f, base.omega, params);
        const PUFun f2 = build(wave.f, wave.omega, params);
        const auto t0 = Clock::now();
        const PUFun combined = apply_binary(op, f1, f2, params);
        row.build_time_s = seconds_since(t0);

        const auto t1 = Clock::now();
        double worst = 0.0;
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        for (int q = 0; q < 10000; ++q) {
          const std::vector<double> x = {unit(gen), unit(gen)};
          const double direct = op == BinaryOp::add ? base.f(x) + wave.f(x)
                                                    : base.f(x) * wave.f(x);
          worst = std::max(worst, std::abs(combined.eval(x) - direct));
        }
        row.max_error = worst;
        row.eval_time_s = seconds_since(t1);
        row.stored_points = combined.stored_points();
        row.leaf_count = combined.leaf_count();
        row.tree_depth = combined.depth();
      } catch (const BuildLimitError& e) {
        row.status = std::string("build-limit: ") + e.what();
      } catch (const std::exception& e) {
        row.status = std::string("failed: ") + e.what();
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace

std::vector<RunReport> run_suite(const std::string& suite, const SuiteOptions& opts) {
  if (suite == "table1") return run_table1(opts);
  if (suite == "table2") return run_table2(opts);
  if (suite == "table3") return run_table3(opts);
  if (suite == "rotate2d") return run_rotate2d(opts);
  if (suite == "rotate3d") return run_rotate3d(opts);
  if (suite == "arith") return run_arith(opts);
  throw InvalidArgumentError("unknown suite: " + suite);
}

}  // namespace pubench
