#pragma once

#include <random>

#include "krein/matrix.hpp"
#include "krein/series.hpp"

namespace krein::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& g, double lo = -1.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

template <class T>
T random_scalar(Rng& g) {
  if constexpr (FieldTraits<T>::is_quaternion)
    return Quaternion{uniform(g), uniform(g), uniform(g), uniform(g)};
  else
    return Complex{uniform(g), uniform(g)};
}

template <class T>
Matrix<T> random_matrix(Rng& g, std::size_t rows, std::size_t cols, double scale = 1.0) {
  Matrix<T> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_scalar<T>(g) * scale;
  return m;
}

template <class T>
Matrix<T> random_hermitian(Rng& g, std::size_t n) {
  const auto m = random_matrix<T>(g, n, n);
  return hermitian_part(m);
}

template <class T>
std::vector<T> random_vector(Rng& g, std::size_t n, double scale = 1.0) {
  std::vector<T> v(n);
  for (auto& e : v) e = random_scalar<T>(g) * scale;
  return v;
}

template <class T>
OperatorSeries<T> random_series(Rng& g, std::size_t dim, std::size_t degree, double r0, double scale = 1.0) {
  std::vector<Matrix<T>> c;
  for (std::size_t n = 0; n <= degree; ++n) c.push_back(random_matrix<T>(g, dim, dim, scale));
  return OperatorSeries<T>(std::move(c), r0);
}

inline double qdist(const Quaternion& a, const Quaternion& b) { return abs(a - b); }

}  // namespace krein::testing
