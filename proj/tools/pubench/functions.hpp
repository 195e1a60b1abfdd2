#ifndef PUBENCH_FUNCTIONS_HPP
#define PUBENCH_FUNCTIONS_HPP

#include <optional>
#include <string>
#include <vector>

#include "chebtree/domain_spec.hpp"
#include "chebtree/tree.hpp"

namespace pubench {

/// A registered benchmark target: evaluator, box, and optional analytic data.
struct TestFunction {
  std::string name;
  std::size_t d = 2;
  chebtree::Box omega;
  chebtree::PointFn f;
  std::optional<double> analytic_integral;
  std::string params_echo;                  ///< parameter values baked into f
  std::optional<std::string> domain_name;   ///< nonrectangular builds
};

const std::vector<TestFunction>& registry();
const TestFunction* find_function(const std::string& name);

/// Plane wave cliff arctan(250(cos(t) x + sin(t) y)) on [-1,1]^2.
TestFunction plane_wave_2d(double angle);

/// arctan(5(sin(p)cos(t) x + sin(p)sin(t) y + cos(p) z)) on [-1,1]^3.
TestFunction plane_wave_3d(double polar, double azimuth);

}  // namespace pubench

#endif  // PUBENCH_FUNCTIONS_HPP
