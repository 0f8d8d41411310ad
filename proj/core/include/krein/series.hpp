#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "krein/linalg.hpp"
#include "krein/matrix.hpp"

namespace krein {

/// Phi(p) = sum_n p^n Phi_n with d x d coefficients, powers of p acting on
/// the left.  Always a finite list; `certified_radius` is the r0 on which
/// the caller vouches for the function.
template <class T>
class OperatorSeries {
 public:
  OperatorSeries() = default;
  OperatorSeries(std::vector<Matrix<T>> coeffs, double certified_radius = 1.0);

  /// Constant series c * I_d.
  static OperatorSeries constant(std::size_t dim, const T& c, double certified_radius = 1.0);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t length() const noexcept { return coeffs_.size(); }
  /// Highest index with a nonzero coefficient; 0 for the zero series.
  std::size_t degree() const;
  double certified_radius() const noexcept { return radius_; }

  const std::vector<Matrix<T>>& coeffs() const noexcept { return coeffs_; }
  /// Phi_n, or the zero matrix past the end of the list.
  Matrix<T> coeff(std::size_t n) const;

 private:
  std::size_t dim_ = 0;
  std::vector<Matrix<T>> coeffs_;
  double radius_ = 1.0;
};

template <class T>
Matrix<T> eval(const OperatorSeries<T>& f, const T& p);

/// Phi#(p) = sum_n p^n Phi_n^*.
template <class T>
OperatorSeries<T> sharp(const OperatorSeries<T>& f);

/// Coefficients (f * g)_n = sum_r f_r g_{n-r}.
template <class T>
OperatorSeries<T> star_mul(const OperatorSeries<T>& f, const OperatorSeries<T>& g);

template <class T>
OperatorSeries<T> series_add(const OperatorSeries<T>& f, const OperatorSeries<T>& g);

/// Phi * J: every coefficient multiplied on the right by the signature.
template <class T>
OperatorSeries<T> times_signature(const OperatorSeries<T>& f, const Signature& j);

struct StarInverseOptions {
  /// Relative threshold below which the quadratic companion matrix counts as
  /// singular.
  double singular_tol = 1e-12;
};

/// Result of star_inv_linear.  `series` is sum_{n <= order} p^n T^n;
/// `tail_bound` bounds the omitted terms in the spectral norm.
template <class T>
struct StarInverse {
  Matrix<T> series;
  double tail_bound = 0.0;
  double contraction = 0.0;  ///< |p| * ||T|| as estimated
  std::optional<Matrix<T>> closed_form;
  std::optional<double> discrepancy;  ///< ||series - closed_form||_F
  bool closed_form_available = false;
};

/// (1 - pT)^{-*}: the partial Neumann sum and, when applicable, the closed
/// form.  Over H with non-real p the closed form is
///   -p^{-1} (T - conj(s) I)(T^2 - 2 Re(s) T + |s|^2 I)^{-1},  s = p^{-1};
/// over C it is the ordinary resolvent (I - pT)^{-1}.
/// Throws DivergenceError when |p| ||T|| >= 1.
template <class T>
StarInverse<T> star_inv_linear(const Matrix<T>& t, const T& p, int order,
                               const StarInverseOptions& opts = {});

/// alpha = (f(x+Iy) + f(x-Iy)) / 2 and beta = -I (f(x+Iy) - f(x-Iy)) / 2.
struct SliceComponents {
  QMatrix alpha;
  QMatrix beta;
};

SliceComponents slice_components(const OperatorSeries<Quaternion>& f, double x, double y,
                                 const Quaternion& axis);

/// Complex series viewed as quaternionic (coefficients a + b i).
OperatorSeries<Quaternion> to_quaternion(const OperatorSeries<Complex>& f);

/// max ||Phi(z)|| over `samples` equispaced points of |z| = radius.  Over H
/// the circle is taken in the slices of the axes i, j, k and (i+j+k)/sqrt(3).
template <class T>
double sample_max_norm(const OperatorSeries<T>& f, double radius, int samples);

}  // namespace krein
