#pragma once

#include <cstddef>
#include <vector>

#include "krein/matrix.hpp"
#include "krein/series.hpp"

namespace krein {

/// Truncation of the Hermitian form built from Phi on functions
/// f(z) = sum_{u=1}^{N} f_u z^{-u}.  Requires 0 < r < r0 < 1 with r0 the
/// certified radius of the series.
template <class T>
class GramSpec {
 public:
  GramSpec(OperatorSeries<T> series, double r, std::size_t blocks);

  const OperatorSeries<T>& series() const noexcept { return series_; }
  double r() const noexcept { return r_; }
  double r0() const noexcept { return series_.certified_radius(); }
  std::size_t blocks() const noexcept { return blocks_; }
  std::size_t dim() const noexcept { return series_.dim(); }
  std::size_t ambient_dim() const noexcept { return blocks_ * series_.dim(); }

 private:
  OperatorSeries<T> series_;
  double r_;
  std::size_t blocks_;
};

/// Blocks f_1 ... f_N of length d, stored contiguously.  Block indices in
/// this API are 1-based to match the z^{-u} exponents.
template <class T>
class CoeffVector {
 public:
  CoeffVector(std::size_t blocks, std::size_t dim) : blocks_(blocks), dim_(dim), data_(blocks * dim) {}
  CoeffVector(std::size_t blocks, std::size_t dim, std::vector<T> flat);

  /// e_{u,i}: one in component i of block u.
  static CoeffVector unit(std::size_t blocks, std::size_t dim, std::size_t u, std::size_t i = 0);

  std::size_t blocks() const noexcept { return blocks_; }
  std::size_t dim() const noexcept { return dim_; }

  T& at(std::size_t u, std::size_t i) { return data_[(u - 1) * dim_ + i]; }
  const T& at(std::size_t u, std::size_t i) const { return data_[(u - 1) * dim_ + i]; }
  std::vector<T> block(std::size_t u) const;
  const std::vector<T>& flat() const noexcept { return data_; }

  /// sum_u R^{2u} ||f_u||^2 with R = 1/r.
  double weighted_norm2(double r) const;

 private:
  std::size_t blocks_;
  std::size_t dim_;
  std::vector<T> data_;
};

/// (Tf)_u = f_{u+1}: the coefficient form of f(z) -> z f(z) - f_1.
template <class T>
CoeffVector<T> shift_T(const CoeffVector<T>& f);

/// (M g)_u = g_{u-1}, (M g)_1 = 0: multiplication by z^{-1}.
template <class T>
CoeffVector<T> mult_inverse_variable(const CoeffVector<T>& g);

/// A is the unweighted matrix of the form ([f, g] = <A f, g>), P = D A D
/// with D = diag(r^u) its representation in the orthonormal coordinates
/// phi_u = R^u f_u.
template <class T>
struct GramOperator {
  Matrix<T> A;
  Matrix<T> P;
  std::vector<double> weights;  ///< r^u for u = 1..N
};

/// Direct double sum
///   sum_v sum_{u<=v} <Phi_{v-u} f_v, g_u> + sum_u sum_{v<=u} <Phi_{u-v}^* f_v, g_u>.
template <class T>
T form_coeff(const CoeffVector<T>& f, const CoeffVector<T>& g, const GramSpec<T>& spec);

/// Block rule: A_{uu} = Phi_0 + Phi_0^*, A_{uv} = Phi_{v-u} above the
/// diagonal and Phi_{u-v}^* below.  The lower triangle is assembled and
/// mirrored, so A and P are exactly Hermitian.
template <class T>
GramOperator<T> build_form_matrix(const GramSpec<T>& spec);

/// Trapezoidal rule with `nodes` points per circle for
///   (1 / 4 pi^2) iint_{|a|=|b|=r} <C_Phi(a, b) f(a), g(b)> da d(conj b),
/// C_Phi(a, b) = (Phi(a) + Phi(b)^*) / (1 - a conj(b)), with the measure
/// taken from the parametrization a = r e^{i theta}, b = r e^{i psi}.
/// Complex field only; `nodes` must be a power of two >= 64.
template <class T>
T form_contour(const CoeffVector<T>& f, const CoeffVector<T>& g, const GramSpec<T>& spec, int nodes);

/// Closed-form action of P on the Cauchy section xi / (a - conj(w)),
/// evaluated at |b| = r:
///   (r^2 / b) (Phi(b)^* + Phi(conj w)) / (1 - conj(b) conj(w)) xi.
std::vector<Complex> apply_P_cauchy(const GramSpec<Complex>& spec, Complex w,
                                    const std::vector<Complex>& xi, Complex b);

/// Blocks conj(a)^{u-1} c, u = 1..N (left multiplication).
template <class T>
CoeffVector<T> cauchy_vector(const T& a, const std::vector<T>& c, std::size_t blocks, double r);

/// K(p, q) = sum_t p^t (Phi(p) + Phi(q)^*) conj(q)^t.  Over C this is the
/// closed form (Phi(p) + Phi(q)^*) / (1 - p conj(q)); over H the series is
/// summed until the geometric factor drops below 1e-18.
template <class T>
Matrix<T> kernel_phi(const OperatorSeries<T>& phi, const T& p, const T& q);

struct NormBound {
  double norm_estimate = 0.0;  ///< ||P|| by power iteration
  double max_phi = 0.0;        ///< M = max_{|z| = r0} ||Phi(z)||, sampled
  double bound = 0.0;          ///< 2 M r0^2 / (1 - r0^2)^2
  bool pass = false;
};

/// pass is norm_estimate <= bound (1 + 1e-12).
template <class T>
NormBound norm_bound_check(const GramSpec<T>& spec, int samples);

}  // namespace krein
