#include "functions.hpp"

#include <cmath>

namespace pubench {

using chebtree::Box;
using chebtree::Interval;

namespace {

Box box2(double lo, double hi) { return Box({Interval(lo, hi), Interval(lo, hi)}); }
Box box3(double lo, double hi) {
  return Box({Interval(lo, hi), Interval(lo, hi), Interval(lo, hi)});
}

double sq(double v) { return v * v; }

// Franke's four-term exponential test surface on the unit square.
double franke(double x, double y) {
  return 0.75 * std::exp(-(sq(9 * x - 2) + sq(9 * y - 2)) / 4.0) +
         0.75 * std::exp(-sq(9 * x + 1) / 49.0 - (9 * y + 1) / 10.0) +
         0.5 * std::exp(-(sq(9 * x - 7) + sq(9 * y - 3)) / 4.0) -
         0.2 * std::exp(-sq(9 * x - 4) - sq(9 * y - 7));
}

double erf_integral_1d(double a, double u, double lo, double hi) {
  const double spi = std::sqrt(M_PI);
  return spi / (2.0 * a) * (std::erf(a * (hi - u)) - std::erf(a * (lo - u)));
}

std::vector<TestFunction> make_registry() {
  std::vector<TestFunction> fns;
  const double u1 = 0.75, u2 = 0.25, u3 = -0.75;
  const double a1 = 5.0, a2 = 10.0;
  const double b = 25.0;  // 3-D Genz coefficient

  fns.push_back({"log-cliff", 2, box2(-1, 1),
                 [](std::span<const double> x) {
                   return std::log(1.0 + (x[0] * x[0] + std::pow(x[1], 4)) / 1e-5);
                 },
                 std::nullopt, "scale=1e-5", std::nullopt});

  fns.push_back({"arctan-cliff", 2, box2(-1, 1),
                 [](std::span<const double> x) {
                   return std::atan((x[0] + x[1] * x[1]) / 1e-2);
                 },
                 std::nullopt, "scale=1e-2", std::nullopt});

  fns.push_back({"runge-spike", 2, box2(-1, 1),
                 [](std::span<const double> x) {
                   return 1e-4 / ((1e-4 + x[0] * x[0]) * (1e-4 + x[1] * x[1]));
                 },
                 std::nullopt, "scale=1e-4", std::nullopt});

  fns.push_back({"franke", 2, box2(0, 1),
                 [](std::span<const double> x) { return franke(x[0], x[1]); },
                 std::nullopt, "", std::nullopt});

  fns.push_back({"genz-oscillatory-2d", 2, box2(-1, 1),
                 [=](std::span<const double> x) {
                   return std::cos(u1 * M_PI + a1 * x[0] + a2 * x[1]);
                 },
                 std::nullopt, "u1=0.75 a=[5,10]", std::nullopt});

  fns.push_back({"genz-product-peak-2d", 2, box2(-1, 1),
                 [=](std::span<const double> x) {
                   return 1.0 / ((1.0 / (a1 * a1) + sq(x[0] - u1)) *
                                 (1.0 / (a2 * a2) + sq(x[1] - u2)));
                 },
                 std::nullopt, "u=[0.75,0.25] a=[5,10]", std::nullopt});

  fns.push_back({"genz-corner-peak-2d", 2, box2(0, 1),
                 [=](std::span<const double> x) {
                   return std::pow(1.0 + a1 * x[0] + a2 * x[1], -3.0);
                 },
                 std::nullopt, "a=[5,10]", std::nullopt});

  // the classic unit-square Genz domain; the peak parameters u sit inside it
  fns.push_back({"genz-gaussian-2d", 2, box2(0, 1),
                 [=](std::span<const double> x) {
                   return std::exp(-(a1 * a1 * sq(x[0] - u1) + a2 * a2 * sq(x[1] - u2)));
                 },
                 erf_integral_1d(a1, u1, 0, 1) * erf_integral_1d(a2, u2, 0, 1),
                 "u=[0.75,0.25] a=[5,10]", std::nullopt});

  fns.push_back({"genz-oscillatory-3d", 3, box3(-1, 1),
                 [=](std::span<const double> x) {
                   return std::cos(u1 * M_PI + b * (x[0] + x[1] + x[2]));
                 },
                 std::nullopt, "u1=0.75 a=[25,25,25]", std::nullopt});

  fns.push_back({"genz-product-peak-3d", 3, box3(-1, 1),
                 [=](std::span<const double> x) {
                   return 1.0 / ((1.0 / (b * b) + sq(x[0] - u1)) * (1.0 / (b * b) + sq(x[1] - u2)) *
                                 (1.0 / (b * b) + sq(x[2] - u3)));
                 },
                 std::nullopt, "u=[0.75,0.25,-0.75] a=[25,25,25]", std::nullopt});

  fns.push_back({"genz-corner-peak-3d", 3, box3(0, 1),
                 [=](std::span<const double> x) {
                   return std::pow(1.0 + b * (x[0] + x[1] + x[2]), -4.0);
                 },
                 std::nullopt, "a=[25,25,25]", std::nullopt});

  fns.push_back({"genz-gaussian-3d", 3, box3(-1, 1),
                 [=](std::span<const double> x) {
                   return std::exp(-(b * b) * (sq(x[0] - u1) + sq(x[1] - u2) + sq(x[2] - u3)));
                 },
                 erf_integral_1d(b, u1, -1, 1) * erf_integral_1d(b, u2, -1, 1) *
                     erf_integral_1d(b, u3, -1, 1),
                 "u=[0.75,0.25,-0.75] a=[25,25,25]", std::nullopt});

  fns.push_back({"cosh-ridge-3d", 3, box3(-1, 1),
                 [](std::span<const double> x) {
                   const double c = std::cosh(5.0 * (x[0] + x[1] + x[2]));
                   return 1.0 / (c * c);
                 },
                 std::nullopt, "scale=5", std::nullopt});

  fns.push_back({"arctan-ridge-3d", 3, box3(-1, 1),
                 [](std::span<const double> x) {
                   return std::atan(5.0 * (x[0] + x[1]) + x[2]);
                 },
                 std::nullopt, "scale=5", std::nullopt});

  fns.push_back({"arctan-ridge-x", 2, box2(-1, 1),
                 [](std::span<const double> x) { return std::atan(250.0 * x[0]); },
                 std::nullopt, "scale=250", std::nullopt});

  const auto g1 = [](std::span<const double> x) { return std::exp(x[0] + x[1]); };
  const auto g2 = [](std::span<const double> x) {
    const double r2 = sq(x[0] - 1.1) + sq(x[1] - 1.1);
    return 1.0 / (r2 * r2);
  };
  const auto g3 = [](std::span<const double> x) {
    return std::cos(24.0 * x[0] - 32.0 * x[1]) * std::sin(21.0 * x[0] - 28.0 * x[1]);
  };
  const auto g4 = [](std::span<const double> x) {
    return std::atan(3.0 * (x[0] * x[0] + x[1]));
  };

  struct GEntry {
    const char* base;
    chebtree::PointFn f;
  };
  const GEntry gs[] = {{"g1", g1}, {"g2", g2}, {"g3", g3}, {"g4", g4}};
  for (const auto& entry : gs) {
    for (const char* dom : {"disk", "diamond", "astroid"}) {
      const chebtree::DomainSpec spec = *chebtree::domain_by_name(dom);
      fns.push_back({std::string(entry.base) + "-" + dom, 2, spec.bbox, entry.f, std::nullopt,
                     "", std::string(dom)});
    }
  }

  // plane waves at a few fixed angles for ad-hoc arithmetic experiments
  for (int k : {1, 2, 3}) {
    const double t = k * M_PI / 12.0;
    TestFunction pw = plane_wave_2d(t);
    pw.name = "plane-wave-" + std::to_string(15 * k);
    fns.push_back(std::move(pw));
  }
  return fns;
}

}  // namespace

const std::vector<TestFunction>& registry() {
  static const std::vector<TestFunction> fns = make_registry();
  return fns;
}

const TestFunction* find_function(const std::string& name) {
  for (const auto& fn : registry()) {
    if (fn.name == name) return &fn;
  }
  if (name == "cliff2d") return find_function("arctan-cliff");
  return nullptr;
}

TestFunction plane_wave_2d(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  char echo[64];
  std::snprintf(echo, sizeof(echo), "t=%.10g", angle);
  return {"plane-wave", 2, box2(-1, 1),
          [c, s](std::span<const double> x) { return std::atan(250.0 * (c * x[0] + s * x[1])); },
          std::nullopt, echo, std::nullopt};
}

TestFunction plane_wave_3d(double polar, double azimuth) {
  const double nx = std::sin(polar) * std::cos(azimuth);
  const double ny = std::sin(polar) * std::sin(azimuth);
  const double nz = std::cos(polar);
  char echo[64];
  std::snprintf(echo, sizeof(echo), "p=%.10g t=%.10g", polar, azimuth);
  return {"plane-wave-3d", 3, box3(-1, 1),
          [nx, ny, nz](std::span<const double> x) {
            return std::atan(5.0 * (nx * x[0] + ny * x[1] + nz * x[2]));
          },
          std::nullopt, echo, std::nullopt};
}

}  // namespace pubench
