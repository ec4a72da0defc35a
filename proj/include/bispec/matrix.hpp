#pragma once

#include <cstddef>
#include <vector>

namespace bispec {

// Row-major dense matrix for exact integer work; Eigen is used for the floating point side.
template <class T>
struct DenseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<T> data;

  DenseMatrix() = default;
  DenseMatrix(int r, int c, T fill = T(0))
      : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, fill) {}

  T& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  const T& operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }

  T trace() const {
    T t(0);
    for (int i = 0; i < rows && i < cols; ++i) t += (*this)(i, i);
    return t;
  }

  bool operator==(const DenseMatrix&) const = default;
};

}  // namespace bispec
