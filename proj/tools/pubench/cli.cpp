#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <random>

#include "chebtree/algebra.hpp"
#include "chebtree/extension.hpp"
#include "chebtree/fun.hpp"
#include "functions.hpp"
#include "report.hpp"
#include "suites.hpp"

namespace pubench {

using namespace chebtree;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitBuildLimit = 3;

struct CommonOpts {
  std::optional<std::size_t> n;
  std::optional<double> tol;
  std::optional<double> overlap;
  std::optional<std::size_t> max_depth;
  std::optional<std::size_t> max_leaves;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--n", opts.n, "samples per dimension (N)");
  cmd->add_option("--tol", opts.tol, "target tolerance");
  cmd->add_option("--t", opts.overlap, "zone overlap parameter (> 1)");
  cmd->add_option("--seed", opts.seed, "seed for randomized checks");
  cmd->add_option("--max-depth", opts.max_depth, "tree depth safety limit");
  cmd->add_option("--max-leaves", opts.max_leaves, "leaf count safety limit");
}

BuildParams params_for(const TestFunction& fn, const CommonOpts& opts) {
  BuildParams p = BuildParams::defaults_for(fn.d);
  if (fn.domain_name) {
    p.samples_per_dim = 17;
    p.tol = 1e-10;
  }
  if (opts.n) p.samples_per_dim = *opts.n;
  if (opts.tol) p.tol = *opts.tol;
  if (opts.overlap) p.overlap = *opts.overlap;
  if (opts.max_depth) p.max_depth = *opts.max_depth;
  if (opts.max_leaves) p.max_leaves = *opts.max_leaves;
  return p;
}

PUFun build_function(const TestFunction& fn, const BuildParams& params) {
  if (fn.domain_name) return build_extension(fn.f, *domain_by_name(*fn.domain_name), params);
  return build(fn.f, fn.omega, params);
}

const TestFunction& require_function(const std::string& name) {
  const TestFunction* fn = find_function(name);
  if (!fn) throw InvalidArgumentError("unknown function: " + name);
  return *fn;
}

BinaryOp parse_op(const std::string& text) {
  if (text == "add" || text == "+") return BinaryOp::add;
  if (text == "sub" || text == "-") return BinaryOp::sub;
  if (text == "mul" || text == "*") return BinaryOp::mul;
  if (text == "div" || text == "/") return BinaryOp::div;
  throw InvalidArgumentError("unknown operation: " + text + " (use add|sub|mul|div)");
}

int cmd_run(const std::string& suite, const SuiteOptions& opts, const std::string& out) {
  if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
    throw InvalidArgumentError("unknown suite: " + suite);
  const auto rows = run_suite(suite, opts);
  if (!out.empty()) {
    const std::string path = resolve_out_path(out);
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
      write_reports_json(path, rows);
    else
      write_reports_csv(path, rows);
    std::printf("wrote %zu rows to %s\n", rows.size(), path.c_str());
  } else {
    std::fputs(format_report_table(rows).c_str(), stdout);
  }
  if (suite == "rotate2d") {
    double lo = 1e300, hi = 0.0;
    for (const auto& r : rows)
      if (r.status == "ok") {
        lo = std::min(lo, r.build_time_s);
        hi = std::max(hi, r.build_time_s);
      }
    if (lo > 0.0 && hi > 0.0)
      std::printf("build-time max/min ratio: %.3g\n", hi / lo);
  }
  for (const auto& r : rows)
    if (r.status.rfind("build-limit", 0) == 0) return kExitBuildLimit;
  return kExitOk;
}

int cmd_zones(const std::string& name, const CommonOpts& opts, const std::string& out) {
  const TestFunction& fn = require_function(name);
  const PUFun fun = build_function(fn, params_for(fn, opts));
  const std::string path = resolve_out_path(out);
  export_zones(fun, path);
  std::printf("wrote %zu leaves to %s\n", fun.leaf_count(), path.c_str());
  return kExitOk;
}

int cmd_field(const std::string& name, std::size_t grid, const CommonOpts& opts,
              const std::string& out) {
  if (grid < 2) throw InvalidArgumentError("--grid must be at least 2");
  const TestFunction& fn = require_function(name);
  const PUFun fun = build_function(fn, params_for(fn, opts));
  std::vector<std::vector<double>> axes(fn.d);
  for (std::size_t j = 0; j < fn.d; ++j) {
    axes[j].resize(grid);
    for (std::size_t i = 0; i < grid; ++i)
      axes[j][i] = fun.omega()[j].lo + fun.omega()[j].width() * static_cast<double>(i) /
                                           static_cast<double>(grid - 1);
    axes[j].front() = fun.omega()[j].lo;
    axes[j].back() = fun.omega()[j].hi;
  }
  const std::string path = resolve_out_path(out);
  export_field(fun, axes, path);
  std::printf("wrote %zu values to %s\n", static_cast<std::size_t>(std::pow(grid, fn.d)),
              path.c_str());
  return kExitOk;
}

int cmd_integrate(const std::string& name, const CommonOpts& opts) {
  const TestFunction& fn = require_function(name);
  const PUFun fun = build_function(fn, params_for(fn, opts));
  const double value = fun.integrate();
  std::printf("integral %.17g\n", value);
  if (fn.analytic_integral) {
    std::printf("reference %.17g\n", *fn.analytic_integral);
    std::printf("abs_error %.17g\n", std::abs(value - *fn.analytic_integral));
  }
  return kExitOk;
}

int cmd_diff(const std::string& name, std::size_t dim, bool check, const CommonOpts& opts) {
  const TestFunction& fn = require_function(name);
  if (dim < 1 || dim > fn.d)
    throw InvalidArgumentError("--dim must be between 1 and the function dimension");
  const PUFun fun = build_function(fn, params_for(fn, opts));
  const PUFun deriv = fun.differentiate(dim - 1);
  std::printf("differentiated %s along dimension %zu: %zu leaves, %zu stored points\n",
              fn.name.c_str(), dim, deriv.leaf_count(), deriv.stored_points());
  if (check) {
    std::mt19937_64 gen(opts.seed ? opts.seed : 20240811u);
    const double h = 1e-6;
    double worst = 0.0;
    int tested = 0;
    while (tested < 200) {
      std::vector<double> x(fn.d);
      bool interior = true;
      for (std::size_t j = 0; j < fn.d; ++j) {
        const auto& iv = fun.omega()[j];
        std::uniform_real_distribution<double> dist(iv.lo + 2 * h * iv.width(),
                                                    iv.hi - 2 * h * iv.width());
        x[j] = dist(gen);
      }
      if (fun.domain()) {
        // keep a small margin inside the membership set for the stencil
        std::vector<double> probe = x;
        for (int s : {-1, 1}) {
          probe[dim - 1] = x[dim - 1] + s * h;
          if (!fun.domain()->inside(probe)) interior = false;
        }
        probe[dim - 1] = x[dim - 1];
        if (!fun.domain()->inside(probe)) interior = false;
      }
      if (!interior) continue;
      ++tested;
      std::vector<double> xp = x, xm = x;
      xp[dim - 1] += h;
      xm[dim - 1] -= h;
      const double fd = (fun.eval(xp) - fun.eval(xm)) / (2 * h);
      worst = std::max(worst, std::abs(deriv.eval(x) - fd));
    }
    std::printf("max finite-difference discrepancy %.17g\n", worst);
  }
  return kExitOk;
}

int cmd_arith(const std::string& name1, const std::string& op_text, const std::string& name2,
              const CommonOpts& opts, const std::string& out) {
  const TestFunction& f1 = require_function(name1);
  const TestFunction& f2 = require_function(name2);
  if (f1.domain_name || f2.domain_name)
    throw InvalidArgumentError("arith supports rectangular functions only");
  if (!(f1.omega == f2.omega) || f1.d != f2.d)
    throw InvalidArgumentError("arith operands must share the same box");
  const BinaryOp op = parse_op(op_text);
  const BuildParams params = params_for(f1, opts);

  const PUFun a = build(f1.f, f1.omega, params);
  const PUFun b = build(f2.f, f2.omega, params);
  const auto t0 = std::chrono::steady_clock::now();
  const PUFun combined = apply_binary(op, a, b, params);
  const double combine_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::mt19937_64 gen(opts.seed ? opts.seed : 20240811u);
  double worst = 0.0;
  std::vector<std::uniform_real_distribution<double>> dists;
  for (std::size_t j = 0; j < f1.d; ++j)
    dists.emplace_back(f1.omega[j].lo, f1.omega[j].hi);
  for (int q = 0; q < 10000; ++q) {
    std::vector<double> x(f1.d);
    for (std::size_t j = 0; j < f1.d; ++j) x[j] = dists[j](gen);
    double direct = 0.0;
    switch (op) {
      case BinaryOp::add: direct = f1.f(x) + f2.f(x); break;
      case BinaryOp::sub: direct = f1.f(x) - f2.f(x); break;
      case BinaryOp::mul: direct = f1.f(x) * f2.f(x); break;
      case BinaryOp::div: direct = f1.f(x) / f2.f(x); break;
    }
    worst = std::max(worst, std::abs(combined.eval(x) - direct));
  }

  RunReport row;
  row.function = name1 + " " + to_string(op) + " " + name2;
  row.build_time_s = combine_s;
  row.max_error = worst;
  row.stored_points = combined.stored_points();
  row.leaf_count = combined.leaf_count();
  row.tree_depth = combined.depth();
  std::printf("%s: combine_time_s %.6g, max_error %.17g, stored_points %zu, leaves %zu\n",
              row.function.c_str(), combine_s, worst, row.stored_points, row.leaf_count);
  if (!out.empty()) {
    const std::string path = resolve_out_path(out);
    write_reports_csv(path, {row});
    std::printf("wrote report to %s\n", path.c_str());
  }
  return kExitOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"adaptive partition-of-unity Chebyshev approximation benchmarks"};
  app.require_subcommand(1);

  // run
  std::string suite;
  SuiteOptions suite_opts;
  CommonOpts run_common;
  std::string run_out;
  auto* run = app.add_subcommand("run", "run a benchmark suite");
  run->add_option("suite", suite, "one of: table1 table2 table3 rotate2d rotate3d arith")
      ->required();
  add_common(run, run_common);
  run->add_option("--out", run_out, "write the report to this CSV or JSON file");
  run->add_flag("--with-g3", suite_opts.with_g3, "include the long-running g3 rows in table3");
  run->add_flag("--parallel", suite_opts.parallel,
                "run suite functions concurrently (timings become noisy)");
  bool no_warmup = false;
  run->add_flag("--no-warmup", no_warmup, "skip the untimed warm-up build");

  // zones
  std::string zones_fn, zones_out;
  CommonOpts zones_common;
  auto* zones = app.add_subcommand("zones", "export leaf zones and domains as CSV");
  zones->add_option("function", zones_fn, "registered function name")->required();
  add_common(zones, zones_common);
  zones->add_option("--out", zones_out, "output CSV path")->required();

  // field
  std::string field_fn, field_out;
  std::size_t field_grid = 200;
  CommonOpts field_common;
  auto* field = app.add_subcommand("field", "export a uniform-grid evaluation as CSV");
  field->add_option("function", field_fn, "registered function name")->required();
  field->add_option("--grid", field_grid, "grid points per dimension");
  add_common(field, field_common);
  field->add_option("--out", field_out, "output CSV path")->required();

  // integrate
  std::string int_fn;
  CommonOpts int_common;
  auto* integrate = app.add_subcommand("integrate", "build and integrate a function");
  integrate->add_option("function", int_fn, "registered function name")->required();
  add_common(integrate, int_common);

  // diff
  std::string diff_fn;
  std::size_t diff_dim = 1;
  bool diff_check = false;
  CommonOpts diff_common;
  auto* diff = app.add_subcommand("diff", "differentiate a function along one dimension");
  diff->add_option("function", diff_fn, "registered function name")->required();
  diff->add_option("--dim", diff_dim, "dimension to differentiate (1-based)")->required();
  diff->add_flag("--check", diff_check, "compare against centered finite differences");
  add_common(diff, diff_common);

  // arith
  std::string arith_f1, arith_op, arith_f2, arith_out;
  CommonOpts arith_common;
  auto* arith = app.add_subcommand("arith", "combine two functions arithmetically");
  arith->add_option("f1", arith_f1, "left operand")->required();
  arith->add_option("op", arith_op, "add|sub|mul|div")->required();
  arith->add_option("f2", arith_f2, "right operand")->required();
  add_common(arith, arith_common);
  arith->add_option("--out", arith_out, "write a one-row CSV report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (run->parsed()) {
      suite_opts.samples_per_dim = run_common.n;
      suite_opts.tol = run_common.tol;
      suite_opts.overlap = run_common.overlap;
      suite_opts.seed = run_common.seed;
      suite_opts.warmup = !no_warmup;
      return cmd_run(suite, suite_opts, run_out);
    }
    if (zones->parsed()) return cmd_zones(zones_fn, zones_common, zones_out);
    if (field->parsed()) return cmd_field(field_fn, field_grid, field_common, field_out);
    if (integrate->parsed()) return cmd_integrate(int_fn, int_common);
    if (diff->parsed()) return cmd_diff(diff_fn, diff_dim, diff_check, diff_common);
    if (arith->parsed()) return cmd_arith(arith_f1, arith_op, arith_f2, arith_common, arith_out);
  } catch (const BuildLimitError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBuildLimit;
  } catch (const InvalidArgumentError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return kExitValidation;
}

}  // namespace pubench
