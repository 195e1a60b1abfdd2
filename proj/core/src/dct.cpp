#include "dct.hpp"

#include <fftw3.h>

#include <mutex>
#include <unordered_map>
#include <vector>

namespace chebtree::detail {

namespace {

// fftw planning is not thread-safe; execution on distinct arrays is.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

fftw_plan plan_for(std::size_t n) {
  static std::unordered_map<std::size_t, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(plan_mutex());
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  // FFTW_UNALIGNED so the plan may be executed on any caller buffers.
  std::vector<double> in(n), out(n);
  fftw_plan p = fftw_plan_r2r_1d(static_cast<int>(n), in.data(), out.data(), FFTW_REDFT00,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(n, p);
  return p;
}

}  // namespace

void dct1(const double* in, double* out, std::size_t n) {
  fftw_plan p = plan_for(n);
  fftw_execute_r2r(p, const_cast<double*>(in), out);
}

}  // namespace chebtree::detail
