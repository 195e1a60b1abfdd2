#include "chebtree/cheb.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dct.hpp"

namespace chebtree {

namespace {
constexpr double kPi = std::numbers::pi;
}

ChebGrid1D cheb_points(std::size_t n, const Interval& interval) {
  if (n < 2) throw InvalidArgumentError("cheb_points: need n >= 2");
  std::vector<double> pts(n);
  const std::size_t m = n - 1;
  for (std::size_t i = 0; i < n; ++i) {
    // ascending order: -cos(i*pi/m) runs from -1 to 1
    const double s = -std::cos(static_cast<double>(i) * kPi / static_cast<double>(m));
    pts[i] = interval.from_unit(s);
  }
  pts.front() = interval.lo;
  pts.back() = interval.hi;
  if (n % 2 == 1) pts[m / 2] = interval.midpoint();
  return ChebGrid1D{n, interval, std::move(pts)};
}

ChebGrid1D midpoint_grid(const Interval& interval) {
  return ChebGrid1D{1, interval, {interval.midpoint()}};
}

namespace {

// Forward 1-D Chebyshev transform of a line of values in ascending point
// order. work/out are scratch of length n.
void line_values_to_coeffs(double* line, std::size_t n, double* /*work*/, double* out) {
  if (n == 1) return;
  detail::dct1(line, out, n);
  const double m = static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    double c = out[k] / m;
    if (k == 0 || k == n - 1) c *= 0.5;
    if (k % 2 == 1) c = -c;  // ascending order reverses the classical grid
    line[k] = c;
  }
}

// Inverse: coefficients -> values on the ascending grid of the same length.
void line_coeffs_to_values(double* line, std::size_t n, double* work, double* out) {
  if (n == 1) return;
  for (std::size_t k = 0; k < n; ++k) {
    double v = line[k];
    if (k != 0 && k != n - 1) v *= 0.5;
    if (k % 2 == 1) v = -v;
    work[k] = v;
  }
  detail::dct1(work, out, n);
  std::copy(out, out + n, line);
}

template <class LineFn>
void transform_all_dims(NdArray& a, LineFn&& fn) {
  const auto& shape = a.shape();
  const std::size_t maxn = *std::max_element(shape.begin(), shape.end());
  std::vector<double> buf(maxn), work(maxn), out(maxn);
  for (std::size_t j = 0; j < shape.size(); ++j) {
    const std::size_t n = shape[j];
    if (n == 1) continue;
    for_each_line(shape, j, [&](std::size_t base, std::size_t stride) {
      for (std::size_t k = 0; k < n; ++k) buf[k] = a[base + k * stride];
      fn(buf.data(), n, work.data(), out.data());
      for (std::size_t k = 0; k < n; ++k) a[base + k * stride] = buf[k];
    });
  }
}

}  // namespace

CoeffTensor values_to_coeffs(const NdArray& values) {
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!std::isfinite(values[i]))
      throw InvalidDataError("values_to_coeffs: non-finite value", {});
  NdArray c = values;
  transform_all_dims(c, line_values_to_coeffs);
  return CoeffTensor{std::move(c)};
}

NdArray coeffs_to_values(const CoeffTensor& coeffs, const std::vector<std::size_t>& sizes) {
  const auto& shape = coeffs.data.shape();
  if (sizes.size() != shape.size())
    throw InvalidArgumentError("coeffs_to_values: dimension mismatch");
  for (std::size_t j = 0; j < sizes.size(); ++j)
    if (sizes[j] < shape[j])
      throw InvalidArgumentError("coeffs_to_values: target size below degree+1");

  // zero-pad into the target shape
  NdArray v(sizes);
  const std::size_t total = coeffs.data.size();
  std::vector<std::size_t> idx(shape.size(), 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    std::size_t out = 0;
    for (std::size_t j = shape.size(); j-- > 0;) {
      idx[j] = rem % shape[j];
      rem /= shape[j];
    }
    for (std::size_t j = 0; j < sizes.size(); ++j) out = out * sizes[j] + idx[j];
    v[out] = coeffs.data[flat];
  }
  transform_all_dims(v, line_coeffs_to_values);
  return v;
}

double clenshaw_1d(const double* c, std::size_t n, double x) {
  if (n == 1) return c[0];
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t k = n; k-- > 1;) {
    const double t = c[k] + 2.0 * x * b1 - b2;
    b2 = b1;
    b1 = t;
  }
  return c[0] + x * b1 - b2;
}

double clenshaw_eval(const CoeffTensor& coeffs, std::span<const double> unit_x) {
  const auto& shape = coeffs.data.shape();
  const std::size_t d = shape.size();
  std::vector<double> buf(coeffs.data.storage());
  std::size_t size = buf.size();
  // contract the trailing (contiguous) dimension repeatedly
  for (std::size_t j = d; j-- > 0;) {
    const std::size_t n = shape[j];
    const std::size_t lines = size / n;
    for (std::size_t l = 0; l < lines; ++l) buf[l] = clenshaw_1d(&buf[l * n], n, unit_x[j]);
    size = lines;
  }
  return buf[0];
}

std::vector<double> sum_coeff_magnitudes_except(const CoeffTensor& coeffs, std::size_t j) {
  const auto& shape = coeffs.data.shape();
  if (j >= shape.size()) throw InvalidArgumentError("sum_coeff_magnitudes_except: bad dimension");
  std::vector<double> gamma(shape[j], 0.0);
  const std::size_t stride = coeffs.data.stride(j);
  const std::size_t n = shape[j];
  for (std::size_t flat = 0; flat < coeffs.data.size(); ++flat)
    gamma[(flat / stride) % n] += std::abs(coeffs.data[flat]);
  return gamma;
}

std::vector<double> clenshaw_curtis_weights(std::size_t n, const Interval& interval) {
  if (n < 2) throw InvalidArgumentError("clenshaw_curtis_weights: need n >= 2");
  const std::size_t m = n - 1;
  std::vector<double> w(n, 0.0);
  const double M = static_cast<double>(m);
  if (m % 2 == 0) {
    w[0] = w[m] = 1.0 / (M * M - 1.0);
  } else {
    w[0] = w[m] = 1.0 / (M * M);
  }
  for (std::size_t i = 1; i < m; ++i) {
    const double theta = static_cast<double>(i) * kPi / M;
    double v = 1.0;
    for (std::size_t k = 1; k <= m / 2; ++k) {
      const double term = 2.0 * std::cos(2.0 * k * theta) / (4.0 * k * k - 1.0);
      v -= (2 * k == m) ? 0.5 * term : term;
    }
    w[i] = 2.0 * v / M;
  }
  // weights are symmetric, so ascending point order needs no reversal
  const double half_width = 0.5 * interval.width();
  for (auto& x : w) x *= half_width;
  return w;
}

CoeffTensor diff_coeffs(const CoeffTensor& coeffs, std::size_t j, double width) {
  const auto& shape = coeffs.data.shape();
  if (j >= shape.size()) throw InvalidArgumentError("diff_coeffs: bad dimension");
  const std::size_t n = shape[j];
  std::vector<std::size_t> out_shape = shape;
  out_shape[j] = std::max<std::size_t>(n - 1, 1);
  NdArray out(out_shape);
  const double scale = 2.0 / width;
  if (n == 1) return CoeffTensor{std::move(out)};  // constant -> zero

  std::vector<double> c(n), b(n + 1);
  std::size_t line_index = 0;
  std::vector<std::size_t> out_bases;
  for_each_line(out_shape, j, [&](std::size_t base, std::size_t) { out_bases.push_back(base); });
  const std::size_t out_stride = out.stride(j);
  for_each_line(shape, j, [&](std::size_t base, std::size_t stride) {
    for (std::size_t k = 0; k < n; ++k) c[k] = coeffs.data[base + k * stride];
    b[n] = b[n - 1] = 0.0;
    for (std::size_t k = n - 1; k-- > 0;)
      b[k] = b[k + 2] + 2.0 * static_cast<double>(k + 1) * c[k + 1];
    b[0] *= 0.5;
    const std::size_t ob = out_bases[line_index++];
    for (std::size_t k = 0; k + 1 < n; ++k) out[ob + k * out_stride] = scale * b[k];
  });
  return CoeffTensor{std::move(out)};
}

std::vector<double> chebyshev_basis(std::span<const double> unit_x, std::size_t ncols) {
  const std::size_t rows = unit_x.size();
  std::vector<double> T(rows * ncols);
  for (std::size_t i = 0; i < rows; ++i) {
    double* row = &T[i * ncols];
    row[0] = 1.0;
    if (ncols > 1) row[1] = unit_x[i];
    for (std::size_t k = 2; k < ncols; ++k)
      row[k] = 2.0 * unit_x[i] * row[k - 1] - row[k - 2];
  }
  return T;
}

double ChebInterpolant::eval(std::span<const double> x) const {
  std::vector<double> s(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) s[j] = box[j].to_unit(x[j]);
  return clenshaw_eval(coeffs, s);
}

NdArray ChebInterpolant::eval_grid(std::span<const std::vector<double>> axes,
                                   std::size_t* madds) const {
  const auto& cshape = coeffs.data.shape();
  const std::size_t d = cshape.size();
  std::vector<std::size_t> out_shape(d);
  for (std::size_t j = 0; j < d; ++j) out_shape[j] = axes[j].size();

  // Contract trailing coefficient dimensions one at a time, innermost first.
  // Each pass writes the fresh grid index as the leading (slowest) dimension,
  // so after d passes the layout is row-major (M_0, ..., M_{d-1}).
  std::vector<double> cur(coeffs.data.storage());
  std::size_t ops = 0;
  for (std::size_t j = d; j-- > 0;) {
    const std::size_t n = cshape[j];
    const std::size_t rows = cur.size() / n;
    const std::size_t M = axes[j].size();
    std::vector<double> s(M);
    for (std::size_t i = 0; i < M; ++i) s[i] = box[j].to_unit(axes[j][i]);
    const std::vector<double> T = chebyshev_basis(s, n);
    ops += M * n;  // basis recurrence
    std::vector<double> next(M * rows);
    for (std::size_t r = 0; r < rows; ++r) {
      const double* crow = &cur[r * n];
      for (std::size_t i = 0; i < M; ++i) {
        const double* trow = &T[i * n];
        double acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) acc += crow[k] * trow[k];
        next[i * rows + r] = acc;
      }
    }
    ops += rows * M * n;
    cur.swap(next);
  }
  if (madds) *madds += ops;
  return NdArray(out_shape, std::move(cur));
}

ChebInterpolant ChebInterpolant::differentiate(std::size_t j) const {
  return ChebInterpolant{diff_coeffs(coeffs, j, box[j].width()), box};
}

}  // namespace chebtree
