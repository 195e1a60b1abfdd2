#ifndef PUBENCH_SUITES_HPP
#define PUBENCH_SUITES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "functions.hpp"

namespace pubench {

/// One benchmark row: build/evaluate a function, measure error on the
/// suite's reference grid.
struct RunReport {
  std::string function;
  std::string params_echo;
  double build_time_s = 0.0;
  double eval_time_s = 0.0;
  double max_error = 0.0;
  std::size_t stored_points = 0;
  std::size_t leaf_count = 0;
  std::size_t tree_depth = 0;
  double warmup_build_time_s = 0.0;
  std::string status = "ok";
};

struct SuiteOptions {
  std::optional<std::size_t> samples_per_dim;
  std::optional<double> tol;
  std::optional<double> overlap;
  std::uint64_t seed = 0;
  bool with_g3 = false;   ///< include the oscillatory rows of the nonrectangular suite
  bool parallel = false;  ///< run suite functions concurrently (timings get noisy)
  bool warmup = true;     ///< one untimed build before the timed one
};

const std::vector<std::string>& suite_names();

/// Runs one of: table1, table2, table3, rotate2d, rotate3d, arith.
/// Build failures are recorded in the row status; the suite continues.
std::vector<RunReport> run_suite(const std::string& suite, const SuiteOptions& opts);

/// Max |fun - f| over the uniform per_dim^d grid on fun's box (for
/// nonrectangular approximants, over the inside points only).
double max_error_on_grid(const chebtree::PUFun& fun, const chebtree::PointFn& f,
                         std::size_t per_dim);

/// Benchmark cases used by the suites, exposed for the acceptance harness.
chebtree::BuildParams suite_params(const std::string& suite, std::size_t d,
                                   const SuiteOptions& opts);
RunReport execute_case(const TestFunction& fn, const chebtree::BuildParams& params,
                       std::size_t error_grid_per_dim, bool warmup);

}  // namespace pubench

#endif  // PUBENCH_SUITES_HPP
