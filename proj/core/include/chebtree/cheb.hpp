#ifndef CHEBTREE_CHEB_HPP
#define CHEBTREE_CHEB_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "chebtree/geometry.hpp"
#include "chebtree/ndarray.hpp"

namespace chebtree {

/// Chebyshev points of the second kind on an interval, stored in ascending
/// coordinate order; endpoints coincide exactly with the interval endpoints.
struct ChebGrid1D {
  std::size_t n = 0;
  Interval interval;
  std::vector<double> points;
};

/// n >= 2 points cos(k*pi/(n-1)) mapped to the interval, ascending.
ChebGrid1D cheb_points(std::size_t n, const Interval& interval);

/// Degenerate one-point grid at the interval midpoint. Used only for leaf
/// payloads whose interpolant is constant in a dimension; cheb_points itself
/// rejects n < 2.
ChebGrid1D midpoint_grid(const Interval& interval);

/// Tensor-product Chebyshev coefficients C[i1,...,id], dense row-major.
/// Shape along dimension j is degree_j + 1.
struct CoeffTensor {
  NdArray data;

  std::size_t dim() const { return data.dim(); }
  std::vector<std::size_t> degrees() const {
    std::vector<std::size_t> deg(data.shape());
    for (auto& m : deg) --m;
    return deg;
  }
};

/// Chebyshev coefficients of the polynomial interpolating `values` on the
/// tensor grid of matching shape (ascending point order, >= 2 points per
/// dimension; size-1 dimensions pass through unchanged). DCT-I per dimension.
CoeffTensor values_to_coeffs(const NdArray& values);

/// Values of the polynomial on the tensor Chebyshev grid with the given
/// per-dimension sizes (each >= degree+1). Inverse of values_to_coeffs when
/// sizes match the coefficient shape.
NdArray coeffs_to_values(const CoeffTensor& coeffs, const std::vector<std::size_t>& sizes);

/// Clenshaw evaluation at a point with coordinates already mapped to [-1,1].
double clenshaw_eval(const CoeffTensor& coeffs, std::span<const double> unit_x);

/// One-dimensional Clenshaw recurrence, n coefficients.
double clenshaw_1d(const double* c, std::size_t n, double x);

/// Marginal absolute-coefficient sums: out[i] = sum of |C| over all indices
/// with index i in dimension j.
std::vector<double> sum_coeff_magnitudes_except(const CoeffTensor& coeffs, std::size_t j);

/// Clenshaw-Curtis weights for the n-point second-kind grid on the interval,
/// ascending point order; exact for polynomials of degree <= n-1.
std::vector<double> clenshaw_curtis_weights(std::size_t n, const Interval& interval);

/// Coefficients of the partial derivative along dimension j. `width` is the
/// length of the interval the coefficients live on in that dimension (the
/// chain-rule factor is 2/width); degree drops by one, floored at zero.
CoeffTensor diff_coeffs(const CoeffTensor& coeffs, std::size_t j, double width = 2.0);

/// Row-major M x ncols matrix of T_k(s_i) for unit coordinates s.
std::vector<double> chebyshev_basis(std::span<const double> unit_x, std::size_t ncols);

/// A coefficient tensor bound to the box it was sampled on.
struct ChebInterpolant {
  CoeffTensor coeffs;
  Box box;

  double eval(std::span<const double> x) const;

  /// Values on the Cartesian product of the given axes (each inside the box),
  /// via per-dimension contraction; cost O(prod(M) * sum over dims) rather
  /// than O(prod(M) * prod(N)). Adds performed multiply-add count to *madds.
  NdArray eval_grid(std::span<const std::vector<double>> axes,
                    std::size_t* madds = nullptr) const;

  ChebInterpolant differentiate(std::size_t j) const;
};

}  // namespace chebtree

#endif  // CHEBTREE_CHEB_HPP
