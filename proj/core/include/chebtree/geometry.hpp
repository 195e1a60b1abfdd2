#ifndef CHEBTREE_GEOMETRY_HPP
#define CHEBTREE_GEOMETRY_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "chebtree/errors.hpp"

namespace chebtree {

/// Closed interval [lo, hi] with lo < hi, both finite.
struct Interval {
  double lo = -1.0;
  double hi = 1.0;

  Interval() = default;
  Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(std::isfinite(lo) && std::isfinite(hi)) || !(lo < hi))
      throw InvalidArgumentError("Interval: requires finite lo < hi");
  }

  double width() const { return hi - lo; }
  double midpoint() const { return 0.5 * (lo + hi); }

  /// Affine map from [lo,hi] onto [-1,1].
  double to_unit(double x) const { return 2.0 * (x - lo) / (hi - lo) - 1.0; }
  /// Inverse of to_unit; endpoints map exactly.
  double from_unit(double s) const {
    if (s == -1.0) return lo;
    if (s == 1.0) return hi;
    return lo + 0.5 * (s + 1.0) * (hi - lo);
  }

  bool contains(double x, double tol_scale = 0.0) const {
    const double slack = tol_scale * width();
    return x >= lo - slack && x <= hi + slack;
  }

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
};

/// Axis-aligned hyperrectangle; doubles as zone and patch domain.
class Box {
 public:
  Box() = default;
  explicit Box(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
    if (intervals_.empty()) throw InvalidArgumentError("Box: needs at least one dimension");
  }

  std::size_t dim() const { return intervals_.size(); }
  const Interval& operator[](std::size_t j) const { return intervals_[j]; }
  Interval& operator[](std::size_t j) { return intervals_[j]; }
  const std::vector<Interval>& intervals() const { return intervals_; }

  double volume() const {
    double v = 1.0;
    for (const auto& iv : intervals_) v *= iv.width();
    return v;
  }

  std::vector<double> center() const {
    std::vector<double> c(dim());
    for (std::size_t j = 0; j < dim(); ++j) c[j] = intervals_[j].midpoint();
    return c;
  }

  /// Componentwise closed containment with relative slack per dimension.
  bool contains(std::span<const double> x, double tol_scale = 0.0) const {
    for (std::size_t j = 0; j < dim(); ++j)
      if (!intervals_[j].contains(x[j], tol_scale)) return false;
    return true;
  }

  bool contains_box(const Box& inner, double tol_scale = 0.0) const {
    for (std::size_t j = 0; j < dim(); ++j) {
      const double slack = tol_scale * intervals_[j].width();
      if (inner[j].lo < intervals_[j].lo - slack) return false;
      if (inner[j].hi > intervals_[j].hi + slack) return false;
    }
    return true;
  }

  /// Squared Euclidean distance from x to the box (0 if inside).
  double distance2(std::span<const double> x) const {
    double d2 = 0.0;
    for (std::size_t j = 0; j < dim(); ++j) {
      double gap = 0.0;
      if (x[j] < intervals_[j].lo) gap = intervals_[j].lo - x[j];
      else if (x[j] > intervals_[j].hi) gap = x[j] - intervals_[j].hi;
      d2 += gap * gap;
    }
    return d2;
  }

  /// Smallest box containing both operands (dimension must match).
  static Box hull(const Box& a, const Box& b) {
    std::vector<Interval> ivs;
    ivs.reserve(a.dim());
    for (std::size_t j = 0; j < a.dim(); ++j)
      ivs.emplace_back(std::min(a[j].lo, b[j].lo), std::max(a[j].hi, b[j].hi));
    return Box(std::move(ivs));
  }

  friend bool operator==(const Box& a, const Box& b) { return a.intervals_ == b.intervals_; }

 private:
  std::vector<Interval> intervals_;
};

}  // namespace chebtree

#endif  // CHEBTREE_GEOMETRY_HPP
