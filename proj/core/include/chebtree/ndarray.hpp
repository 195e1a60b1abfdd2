#ifndef CHEBTREE_NDARRAY_HPP
#define CHEBTREE_NDARRAY_HPP

#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "chebtree/errors.hpp"

namespace chebtree {

/// Dense d-dimensional double array, row-major (last dimension contiguous).
class NdArray {
 public:
  NdArray() = default;
  explicit NdArray(std::vector<std::size_t> shape)
      : shape_(std::move(shape)), data_(count(shape_), 0.0) {
    if (shape_.empty()) throw InvalidArgumentError("NdArray: empty shape");
  }
  NdArray(std::vector<std::size_t> shape, std::vector<double> data)
      : shape_(std::move(shape)), data_(std::move(data)) {
    if (shape_.empty() || data_.size() != count(shape_))
      throw InvalidArgumentError("NdArray: shape/data mismatch");
  }

  std::size_t dim() const { return shape_.size(); }
  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t size() const { return data_.size(); }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::vector<double>& storage() { return data_; }
  const std::vector<double>& storage() const { return data_; }

  double operator[](std::size_t flat) const { return data_[flat]; }
  double& operator[](std::size_t flat) { return data_[flat]; }

  /// Stride (in elements) of dimension j.
  std::size_t stride(std::size_t j) const {
    std::size_t s = 1;
    for (std::size_t k = j + 1; k < shape_.size(); ++k) s *= shape_[k];
    return s;
  }

  std::size_t flat_index(std::span<const std::size_t> idx) const {
    std::size_t f = 0;
    for (std::size_t j = 0; j < shape_.size(); ++j) f = f * shape_[j] + idx[j];
    return f;
  }
  double at(std::span<const std::size_t> idx) const { return data_[flat_index(idx)]; }
  double& at(std::span<const std::size_t> idx) { return data_[flat_index(idx)]; }

  /// Decompose a flat index into per-dimension indices.
  std::vector<std::size_t> unravel(std::size_t flat) const {
    std::vector<std::size_t> idx(shape_.size());
    for (std::size_t j = shape_.size(); j-- > 0;) {
      idx[j] = flat % shape_[j];
      flat /= shape_[j];
    }
    return idx;
  }

  static std::size_t count(const std::vector<std::size_t>& shape) {
    std::size_t n = 1;
    for (std::size_t s : shape) n *= s;
    return n;
  }

 private:
  std::vector<std::size_t> shape_;
  std::vector<double> data_;
};

/// Calls f(base_offset, stride) once per 1-D line along dimension `dim`.
template <class F>
void for_each_line(const std::vector<std::size_t>& shape, std::size_t dim, F&& f) {
  std::size_t stride = 1;
  for (std::size_t k = dim + 1; k < shape.size(); ++k) stride *= shape[k];
  const std::size_t block = stride * shape[dim];
  const std::size_t total = NdArray::count(shape);
  for (std::size_t outer = 0; outer < total; outer += block)
    for (std::size_t inner = 0; inner < stride; ++inner) f(outer + inner, stride);
}

}  // namespace chebtree

#endif  // CHEBTREE_NDARRAY_HPP
