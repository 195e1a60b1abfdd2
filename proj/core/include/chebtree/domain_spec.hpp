#ifndef CHEBTREE_DOMAIN_SPEC_HPP
#define CHEBTREE_DOMAIN_SPEC_HPP

#include <functional>
#include <optional>
#include <span>
#include <string>

#include "chebtree/geometry.hpp"

namespace chebtree {

/// A (possibly nonrectangular) domain given by a membership predicate and a
/// tight enclosing box. The predicate must be deterministic and false
/// everywhere outside bbox.
struct DomainSpec {
  std::string name;
  Box bbox;
  std::function<bool(std::span<const double>)> inside;
};

/// Unit disk x^2 + y^2 <= 1, bbox [-1,1]^2.
DomainSpec disk_domain();

/// Diamond |x| + |y| <= 1, bbox [-1,1]^2.
DomainSpec diamond_domain();

/// Two astroid lobes |x -+ c|^(2/3) + |y|^(2/3) <= r^(2/3) centered at
/// (+-c, 0); the default (c = 0.4, r = 0.6) gives a connected region with
/// bbox [-1,1] x [-0.6,0.6].
DomainSpec astroid_domain(double lobe_offset = 0.4, double radius = 0.6);

/// Built-in registry lookup by name: "disk", "diamond", "astroid".
std::optional<DomainSpec> domain_by_name(const std::string& name);

}  // namespace chebtree

#endif  // CHEBTREE_DOMAIN_SPEC_HPP
