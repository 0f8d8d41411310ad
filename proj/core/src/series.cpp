#include "krein/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace krein {

template <class T>
OperatorSeries<T>::OperatorSeries(std::vector<Matrix<T>> coeffs, double certified_radius)
    : coeffs_(std::move(coeffs)), radius_(certified_radius) {
  if (coeffs_.empty()) throw DimensionError("OperatorSeries: at least one coefficient is required");
  dim_ = coeffs_.front().rows();
  if (dim_ == 0) throw DimensionError("OperatorSeries: dimension must be positive");
  for (const auto& c : coeffs_)
    if (c.rows() != dim_ || c.cols() != dim_)
      throw DimensionError("OperatorSeries: coefficients must all be d x d");
  if (!(certified_radius > 0.0)) throw PreconditionError("OperatorSeries: radius must be positive");
}

template <class T>
OperatorSeries<T> OperatorSeries<T>::constant(std::size_t dim, const T& c, double certified_radius) {
  return OperatorSeries({Matrix<T>::identity(dim).scaled_left(c)}, certified_radius);
}

template <class T>
std::size_t OperatorSeries<T>::degree() const {
  for (std::size_t n = coeffs_.size(); n-- > 0;)
    if (coeffs_[n].max_abs() != 0.0) return n;
  return 0;
}

template <class T>
Matrix<T> OperatorSeries<T>::coeff(std::size_t n) const {
  if (n < coeffs_.size()) return coeffs_[n];
  return Matrix<T>(dim_, dim_);
}

template <class T>
Matrix<T> eval(const OperatorSeries<T>& f, const T& p) {
  // Horner from the top: p (X + Y) = pX + pY keeps left powers intact.
  const auto& c = f.coeffs();
  Matrix<T> acc = c.back();
  for (std::size_t n = c.size() - 1; n-- > 0;) acc = acc.scaled_left(p) + c[n];
  return acc;
}

template <class T>
OperatorSeries<T> sharp(const OperatorSeries<T>& f) {
  std::vector<Matrix<T>> out;
  out.reserve(f.length());
  for (const auto& c : f.coeffs()) out.push_back(c.adjoint());
  return OperatorSeries<T>(std::move(out), f.certified_radius());
}

template <class T>
OperatorSeries<T> star_mul(const OperatorSeries<T>& f, const OperatorSeries<T>& g) {
  if (f.dim() != g.dim()) throw DimensionError("star_mul: dimension mismatch");
  const std::size_t len = f.length() + g.length() - 1;
  std::vector<Matrix<T>> out(len, Matrix<T>(f.dim(), f.dim()));
  for (std::size_t a = 0; a < f.length(); ++a)
    for (std::size_t b = 0; b < g.length(); ++b) out[a + b] += f.coeffs()[a] * g.coeffs()[b];
  return OperatorSeries<T>(std::move(out), std::min(f.certified_radius(), g.certified_radius()));
}

template <class T>
OperatorSeries<T> series_add(const OperatorSeries<T>& f, const OperatorSeries<T>& g) {
  if (f.dim() != g.dim()) throw DimensionError("series_add: dimension mismatch");
  const std::size_t len = std::max(f.length(), g.length());
  std::vector<Matrix<T>> out;
  out.reserve(len);
  for (std::size_t n = 0; n < len; ++n) out.push_back(f.coeff(n) + g.coeff(n));
  return OperatorSeries<T>(std::move(out), std::min(f.certified_radius(), g.certified_radius()));
}

template <class T>
OperatorSeries<T> times_signature(const OperatorSeries<T>& f, const Signature& j) {
  if (j.size() != f.dim()) throw DimensionError("times_signature: signature size mismatch");
  std::vector<Matrix<T>> out;
  out.reserve(f.length());
  for (const auto& c : f.coeffs()) out.push_back(apply_right(c, j));
  return OperatorSeries<T>(std::move(out), f.certified_radius());
}

namespace {

template <class T>
Matrix<T> shift_diagonal(Matrix<T> m, const T& s) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) -= s;
  return m;
}

}  // namespace

template <class T>
StarInverse<T> star_inv_linear(const Matrix<T>& t, const T& p, int order, const StarInverseOptions& opts) {
  if (!t.is_square()) throw DimensionError("star_inv_linear: T must be square");
  if (order < 0) throw PreconditionError("star_inv_linear: order must be non-negative");
  const std::size_t m = t.rows();
  const double contraction = std::sqrt(norm(p)) * op_norm_estimate(t);
  if (!(contraction < 1.0))
    throw DivergenceError("star_inv_linear: |p| ||T|| = " + std::to_string(contraction) + " >= 1");

  StarInverse<T> out;
  out.contraction = contraction;
  Matrix<T> sum = Matrix<T>::identity(m);
  Matrix<T> tpow = Matrix<T>::identity(m);
  T ppow{1.0};
  for (int n = 1; n <= order; ++n) {
    tpow = tpow * t;
    ppow = ppow * p;
    sum += tpow.scaled_left(ppow);
  }
  out.series = std::move(sum);
  out.tail_bound = std::pow(contraction, order + 1) / (1.0 - contraction);

  try {
    bool slice_form = false;
    if constexpr (FieldTraits<T>::is_quaternion) slice_form = slice_decompose(p).y > 0.0;
    if (slice_form) {
      const T s = inverse(p);
      const double re_s = real(s);
      Matrix<T> q = t * t - 2.0 * re_s * t + Matrix<T>::identity(m) * norm(s);
      const Matrix<T> qinv = inverse(q, opts.singular_tol);
      out.closed_form = (shift_diagonal(t, conj(s)) * qinv).scaled_left(-inverse(p));
    } else {
      out.closed_form = inverse(Matrix<T>::identity(m) - t.scaled_left(p), opts.singular_tol);
    }
    out.closed_form_available = true;
    out.discrepancy = (out.series - *out.closed_form).norm_fro();
  } catch (const PreconditionError&) {
    out.closed_form_available = false;
  }
  return out;
}

SliceComponents slice_components(const OperatorSeries<Quaternion>& f, double x, double y,
                                 const Quaternion& axis) {
  if (std::abs(axis.w) > 1e-12 || std::abs(norm(axis) - 1.0) > 1e-12)
    throw PreconditionError("slice_components: axis must be a unit imaginary quaternion");
  const QMatrix plus = eval(f, Quaternion{x} + axis * y);
  const QMatrix minus = eval(f, Quaternion{x} - axis * y);
  return {0.5 * (plus + minus), 0.5 * (plus - minus).scaled_left(-axis)};
}

OperatorSeries<Quaternion> to_quaternion(const OperatorSeries<Complex>& f) {
  std::vector<QMatrix> out;
  out.reserve(f.length());
  for (const auto& c : f.coeffs()) out.push_back(to_quaternion(c));
  return OperatorSeries<Quaternion>(std::move(out), f.certified_radius());
}

template <class T>
double sample_max_norm(const OperatorSeries<T>& f, double radius, int samples) {
  std::vector<T> axes;
  if constexpr (FieldTraits<T>::is_quaternion) {
    const double s3 = 1.0 / std::sqrt(3.0);
    axes = {kQuatI, kQuatJ, kQuatK, Quaternion{0.0, s3, s3, s3}};
  } else {
    axes = {T{0.0, 1.0}};
  }
  double best = 0.0;
  for (const T& axis : axes) {
    for (int k = 0; k < samples; ++k) {
      const double th = 2.0 * std::numbers::pi * k / samples;
      const T z = T{radius * std::cos(th)} + axis * (radius * std::sin(th));
      best = std::max(best, op_norm(eval(f, z)));
    }
  }
  return best;
}

#define KREIN_SERIES_INSTANTIATE(T)                                                            \
  template class OperatorSeries<T>;                                                            \
  template Matrix<T> eval<T>(const OperatorSeries<T>&, const T&);                              \
  template OperatorSeries<T> sharp<T>(const OperatorSeries<T>&);                               \
  template OperatorSeries<T> star_mul<T>(const OperatorSeries<T>&, const OperatorSeries<T>&);  \
  template OperatorSeries<T> series_add<T>(const OperatorSeries<T>&, const OperatorSeries<T>&); \
  template OperatorSeries<T> times_signature<T>(const OperatorSeries<T>&, const Signature&);   \
  template StarInverse<T> star_inv_linear<T>(const Matrix<T>&, const T&, int,                  \
                                             const StarInverseOptions&);                       \
  template double sample_max_norm<T>(const OperatorSeries<T>&, double, int);

KREIN_SERIES_INSTANTIATE(Complex)
KREIN_SERIES_INSTANTIATE(Quaternion)

#undef KREIN_SERIES_INSTANTIATE

}  // namespace krein
