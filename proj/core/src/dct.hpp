#ifndef CHEBTREE_SRC_DCT_HPP
#define CHEBTREE_SRC_DCT_HPP

#include <cstddef>

namespace chebtree::detail {

/// Unnormalized DCT-I (FFTW REDFT00), out-of-place, n >= 2:
///   out[k] = in[0] + (-1)^k in[n-1] + 2 * sum_{j=1}^{n-2} in[j] cos(pi j k / (n-1)).
/// Thread-safe; plans are cached per size.
void dct1(const double* in, double* out, std::size_t n);

}  // namespace chebtree::detail

#endif  // CHEBTREE_SRC_DCT_HPP
