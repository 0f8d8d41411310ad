#include "krein/krein_range.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace krein {

template <class T>
KreinBasis<T> spectral_split(const Matrix<T>& p, double eps, const EigOptions& opts) {
  if (!(eps > 0.0 && eps < 1.0)) throw PreconditionError("spectral_split: cutoff must lie in (0, 1)");
  if (!p.is_square()) throw DimensionError("spectral_split: matrix must be square");
  const std::size_t n = p.rows();

  KreinBasis<T> out;
  out.cutoff = eps;
  if (p.max_abs() == 0.0) {
    out.vectors = Matrix<T>(n, 0);
    out.signature.zero = n;
    return out;
  }
  const auto eig = hermitian_eig(p, opts);
  for (double v : eig.values) out.max_abs = std::max(out.max_abs, std::abs(v));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(eig.values[a]) > std::abs(eig.values[b]);
  });

  const double thresh = eps * out.max_abs;
  std::vector<std::size_t> keep;
  for (std::size_t idx : order) {
    const double lam = eig.values[idx];
    if (std::abs(lam) <= thresh) {
      ++out.signature.zero;
      continue;
    }
    keep.push_back(idx);
    out.eigenvalues.push_back(lam);
    out.signs.push_back(lam > 0.0 ? 1 : -1);
    (lam > 0.0 ? out.signature.positive : out.signature.negative)++;
    if (std::abs(lam) <= 1e3 * thresh) out.near_cutoff.push_back(lam);
  }

  out.vectors = Matrix<T>(n, keep.size());
  for (std::size_t k = 0; k < keep.size(); ++k) {
    std::vector<T> v = eig.vectors.col(keep[k]);
    std::size_t big = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (norm(v[i]) > norm(v[big])) big = i;
    const T phase = conj(v[big]) / std::sqrt(norm(v[big]));
    for (auto& e : v) e = e * phase;
    out.vectors.set_col(k, v);
  }
  return out;
}

template <class T>
std::vector<T> eigen_coordinates(const std::vector<T>& x, const KreinBasis<T>& basis) {
  if (x.size() != basis.ambient_dim()) throw DimensionError("eigen_coordinates: length mismatch");
  std::vector<T> a(basis.kept());
  for (std::size_t k = 0; k < basis.kept(); ++k) {
    T s{};
    for (std::size_t i = 0; i < x.size(); ++i) s += conj(basis.vectors(i, k)) * x[i];
    a[k] = s;
  }
  return a;
}

namespace {

template <class T>
T weighted_pairing(const std::vector<T>& x, const std::vector<T>& y, const KreinBasis<T>& basis, bool signed_) {
  const auto a = eigen_coordinates(x, basis);
  const auto b = eigen_coordinates(y, basis);
  T s{};
  for (std::size_t k = 0; k < basis.kept(); ++k) {
    double w = 1.0 / std::abs(basis.eigenvalues[k]);
    if (signed_) w *= basis.signs[k];
    s += conj(b[k]) * a[k] * w;
  }
  return s;
}

}  // namespace

template <class T>
T hilbert_form(const std::vector<T>& x, const std::vector<T>& y, const KreinBasis<T>& basis) {
  return weighted_pairing(x, y, basis, false);
}

template <class T>
T krein_form(const std::vector<T>& x, const std::vector<T>& y, const KreinBasis<T>& basis) {
  return weighted_pairing(x, y, basis, true);
}

template <class T>
Matrix<T> spectral_function(const KreinBasis<T>& basis, double (*g)(double)) {
  const std::size_t n = basis.ambient_dim();
  Matrix<T> scaled = basis.vectors;
  for (std::size_t k = 0; k < basis.kept(); ++k) {
    const double w = g(basis.eigenvalues[k]);
    for (std::size_t i = 0; i < n; ++i) scaled(i, k) = scaled(i, k) * w;
  }
  return scaled * basis.vectors.adjoint();
}

template <class T>
Matrix<T> abs_sqrt(const KreinBasis<T>& basis) {
  return spectral_function(basis, +[](double l) { return std::sqrt(std::abs(l)); });
}

template <class T>
Matrix<T> abs_op(const KreinBasis<T>& basis) {
  return spectral_function(basis, +[](double l) { return std::abs(l); });
}

template <class T>
Matrix<T> sigma_op(const KreinBasis<T>& basis) {
  return spectral_function(basis, +[](double l) { return l > 0.0 ? 1.0 : -1.0; });
}

template <class T>
Matrix<T> kernel_projection(const KreinBasis<T>& basis) {
  return Matrix<T>::identity(basis.ambient_dim()) - spectral_function(basis, +[](double) { return 1.0; });
}

template <class T>
Matrix<T> reconstruct(const KreinBasis<T>& basis) {
  return spectral_function(basis, +[](double l) { return l; });
}

#define KREIN_RANGE_INSTANTIATE(T)                                                                \
  template KreinBasis<T> spectral_split<T>(const Matrix<T>&, double, const EigOptions&);          \
  template std::vector<T> eigen_coordinates<T>(const std::vector<T>&, const KreinBasis<T>&);      \
  template T hilbert_form<T>(const std::vector<T>&, const std::vector<T>&, const KreinBasis<T>&); \
  template T krein_form<T>(const std::vector<T>&, const std::vector<T>&, const KreinBasis<T>&);   \
  template Matrix<T> spectral_function<T>(const KreinBasis<T>&, double (*)(double));              \
  template Matrix<T> abs_sqrt<T>(const KreinBasis<T>&);                                           \
  template Matrix<T> abs_op<T>(const KreinBasis<T>&);                                             \
  template Matrix<T> sigma_op<T>(const KreinBasis<T>&);                                           \
  template Matrix<T> kernel_projection<T>(const KreinBasis<T>&);                                  \
  template Matrix<T> reconstruct<T>(const KreinBasis<T>&);

KREIN_RANGE_INSTANTIATE(Complex)
KREIN_RANGE_INSTANTIATE(Quaternion)

#undef KREIN_RANGE_INSTANTIATE

}  // namespace krein
