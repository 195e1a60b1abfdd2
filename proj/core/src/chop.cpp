#include "chebtree/chop.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "chebtree/errors.hpp"

namespace chebtree {

// Coefficient chopping: build a monotone envelope, scan it for a plateau,
// then place the cutoff where the log-envelope plus a tilt toward the left
// end is minimal. Inputs shorter than 17 are never declared resolved.
ChopResult chop(std::span<const double> coeffs, double tol) {
  const std::size_t n = coeffs.size();
  if (n == 0) throw InvalidArgumentError("chop: empty input");
  if (!(tol > 0.0 && tol < 1.0)) throw InvalidArgumentError("chop: tol must be in (0,1)");

  ChopResult result{n, false};
  if (n < 17) return result;

  // Monotone nonincreasing envelope, normalized by its first entry.
  std::vector<double> envelope(n);
  double running = 0.0;
  for (std::size_t j = n; j-- > 0;) {
    running = std::max(running, std::abs(coeffs[j]));
    envelope[j] = running;
  }
  if (envelope[0] == 0.0) return ChopResult{1, true};
  const double scale = envelope[0];
  for (auto& e : envelope) e /= scale;

  // Scan for a plateau: a stretch where the envelope stops decaying fast
  // enough relative to how far it has already fallen.
  std::size_t plateau_point = 0;  // 1-based
  std::size_t j2 = 0;             // 1-based
  for (std::size_t j = 2; j <= n; ++j) {
    j2 = static_cast<std::size_t>(std::llround(1.25 * static_cast<double>(j) + 5.0));
    if (j2 > n) return result;  // no plateau
    const double e1 = envelope[j - 1];
    const double e2 = envelope[j2 - 1];
    const double r = 3.0 * (1.0 - std::log(e1) / std::log(tol));
    if (e1 == 0.0 || e2 / e1 > r) {
      plateau_point = j - 1;
      break;
    }
  }

  if (envelope[plateau_point - 1] == 0.0) return ChopResult{plateau_point, true};

  // Fix the cutoff where the envelope, plus a linear tilt biasing the result
  // toward the left end, is minimal.
  const double tol76 = std::pow(tol, 7.0 / 6.0);
  std::size_t j3 = 0;
  for (std::size_t j = 0; j < n; ++j)
    if (envelope[j] >= tol76) ++j3;
  if (j3 < j2) {
    j2 = j3 + 1;
    envelope[j2 - 1] = tol76;
  }
  const double tilt_end = (-1.0 / 3.0) * std::log10(tol);
  std::size_t best = 0;
  double best_value = 0.0;
  for (std::size_t j = 0; j < j2; ++j) {
    const double cc = std::log10(envelope[j]) +
                      tilt_end * static_cast<double>(j) / static_cast<double>(j2 - 1);
    if (j == 0 || cc < best_value) {
      best_value = cc;
      best = j;
    }
  }
  const std::size_t cutoff = std::max<std::size_t>(best, 1);  // best is 0-based; cutoff = best
  return ChopResult{cutoff, cutoff < n};
}

}  // namespace chebtree
