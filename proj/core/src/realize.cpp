#include "krein/realize.hpp"

#include <algorithm>
#include <cmath>

namespace krein {

template <class T>
std::vector<T> ModelSpace<T>::coefficient(std::size_t k, std::size_t n) const {
  std::vector<T> v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = taylor(n * dim + i, k);
  return v;
}

template <class T>
std::vector<T> ModelSpace<T>::coordinates(std::size_t k) const {
  std::vector<T> v(blocks * dim);
  for (std::size_t n = 0; n < blocks; ++n) {
    const double w = std::pow(r, static_cast<double>(n + 1));
    for (std::size_t i = 0; i < dim; ++i) v[n * dim + i] = taylor(n * dim + i, k) * w;
  }
  return v;
}

template <class T>
ModelSpace<T> build_model_space(const KreinBasis<T>& basis, const GramSpec<T>& spec) {
  if (basis.ambient_dim() != spec.ambient_dim())
    throw DimensionError("build_model_space: basis has ambient dimension " + std::to_string(basis.ambient_dim()) +
                         ", spec expects " + std::to_string(spec.ambient_dim()));
  ModelSpace<T> out;
  out.r = spec.r();
  out.dim = spec.dim();
  out.blocks = spec.blocks();
  out.eigenvalues = basis.eigenvalues;
  out.signs = basis.signs;
  const std::size_t m = basis.kept();
  const std::size_t d = out.dim;
  out.taylor = Matrix<T>(out.blocks * d, m);
  for (std::size_t k = 0; k < m; ++k) {
    const double s = std::sqrt(std::abs(basis.eigenvalues[k]));
    for (std::size_t n = 0; n < out.blocks; ++n) {
      const double w = std::pow(out.r, -static_cast<double>(n + 1)) * s;
      for (std::size_t i = 0; i < d; ++i) out.taylor(n * d + i, k) = basis.vectors(n * d + i, k) * w;
    }
  }
  return out;
}

template <class T>
Matrix<T> eval_model(const ModelSpace<T>& model, const T& z) {
  const std::size_t d = model.dim;
  const std::size_t m = model.kept();
  Matrix<T> acc(d, m);
  for (std::size_t n = model.blocks; n-- > 0;) {
    acc = acc.scaled_left(z);
    acc += model.taylor.block(n * d, 0, d, m);
  }
  return acc;
}

template <class T>
Matrix<T> synthesized_kernel(const ModelSpace<T>& model, const T& z, const T& w) {
  const Matrix<T> ez = eval_model(model, z);
  const Matrix<T> ew = eval_model(model, w);
  return apply_right(ez, model.fundamental_symmetry()) * ew.adjoint();
}

template <class T>
Matrix<T> build_C(const ModelSpace<T>& model) {
  return model.taylor.block(0, 0, model.dim, model.kept());
}

template <class T>
Matrix<T> build_R0(const ModelSpace<T>& model, const KreinBasis<T>& basis) {
  const std::size_t m = model.kept();
  const std::size_t d = model.dim;
  const std::size_t amb = model.blocks * d;
  if (basis.kept() != m || basis.ambient_dim() != amb) throw DimensionError("build_R0: basis/model mismatch");

  // S U Lambda^{1/2}: drop block 1 and move the rest up.
  Matrix<T> shifted(amb, m);
  for (std::size_t k = 0; k < m; ++k) {
    const double s = std::sqrt(std::abs(basis.eigenvalues[k]));
    for (std::size_t a = d; a < amb; ++a) shifted(a - d, k) = basis.vectors(a, k) * s;
  }
  Matrix<T> r0 = basis.vectors.adjoint() * shifted;
  const double big_r = 1.0 / model.r;
  for (std::size_t l = 0; l < m; ++l) {
    const double w = big_r / std::sqrt(std::abs(basis.eigenvalues[l]));
    for (std::size_t k = 0; k < m; ++k) r0(l, k) = r0(l, k) * w;
  }
  return r0;
}

template <class T>
double taylor_shift_defect(const ModelSpace<T>& model, const Matrix<T>& r0, std::size_t upto) {
  const std::size_t d = model.dim;
  const std::size_t m = model.kept();
  if (m == 0) return 0.0;
  upto = std::min(upto, model.blocks - 1);
  double worst = 0.0;
  for (std::size_t n = 0; n < upto; ++n) {
    const Matrix<T> lhs = model.taylor.block((n + 1) * d, 0, d, m);
    const Matrix<T> rhs = model.taylor.block(n * d, 0, d, m) * r0;
    worst = std::max(worst, (lhs - rhs).norm_fro());
  }
  return worst;
}

template <class T>
Matrix<T> Realization<T>::C_adj() const {
  return krein_adjoint(C, J, Signature::identity(C.rows()));
}

template <class T>
Matrix<T> Realization<T>::R0_adj() const {
  return krein_adjoint(R0, J);
}

template <class T>
Realization<T> build_realization(const ModelSpace<T>& model, const KreinBasis<T>& basis, const GramSpec<T>& spec) {
  Realization<T> out;
  out.C = build_C(model);
  out.R0 = build_R0(model, basis);
  out.J = model.fundamental_symmetry();
  const Matrix<T>& phi0 = spec.series().coeffs()[0];
  out.skew = 0.5 * (phi0 - phi0.adjoint());
  const std::size_t m = model.kept();
  out.scale.resize(m);
  for (std::size_t k = 0; k < m; ++k) out.scale[k] = std::sqrt(std::abs(model.eigenvalues[k]));
  if (m > 0) {
    Matrix<T> balanced = out.R0;
    for (std::size_t l = 0; l < m; ++l)
      for (std::size_t k = 0; k < m; ++k) balanced(l, k) = balanced(l, k) * (out.scale[l] / out.scale[k]);
    out.norm.euclidean = op_norm(out.R0);
    out.norm.weighted = op_norm(balanced);
    out.norm.bound = std::min(out.norm.euclidean, out.norm.weighted);
  }
  return out;
}

template <class T>
std::vector<Matrix<T>> realization_moments(const Realization<T>& real, std::size_t nmax) {
  std::vector<Matrix<T>> out;
  out.reserve(nmax + 1);
  Matrix<T> v = real.C_adj();
  out.push_back(real.C * v);
  for (std::size_t n = 1; n <= nmax; ++n) {
    v = real.R0 * v;
    out.push_back(real.C * v);
  }
  return out;
}

namespace {

template <class T>
double abs_of(const T& p) {
  return std::sqrt(norm(p));
}

/// Constant K with ||C R0^n C^{[*]}|| <= K rho^n for the norm `rho` came from.
template <class T>
double moment_constant(const Realization<T>& real, bool weighted) {
  if (real.state_dim() == 0) return 0.0;
  if (!weighted) return op_norm(real.C) * op_norm(real.C_adj());
  Matrix<T> left = real.C;
  Matrix<T> right = real.C_adj();
  for (std::size_t k = 0; k < real.state_dim(); ++k) {
    for (std::size_t i = 0; i < real.dim(); ++i) {
      left(i, k) = left(i, k) * (1.0 / real.scale[k]);
      right(k, i) = right(k, i) * real.scale[k];
    }
  }
  return op_norm(left) * op_norm(right);
}

template <class T>
void require_contraction(const Realization<T>& real, const T& p, const char* what) {
  const double c = abs_of(p) * real.norm.bound;
  if (!(c < 1.0))
    throw DivergenceError(std::string(what) + ": |p| ||R0|| = " + std::to_string(c) + " >= 1");
}

template <class T>
Matrix<T> power_sum(const std::vector<Matrix<T>>& moments, const T& p) {
  Matrix<T> acc = moments.back();
  for (std::size_t n = moments.size() - 1; n-- > 0;) acc = acc.scaled_left(p) + moments[n];
  return acc;
}

template <class T>
std::optional<Matrix<T>> resolvent_closed_form(const Realization<T>& real, const T& p) {
  const std::size_t m = real.state_dim();
  const Matrix<T> id = Matrix<T>::identity(m);
  const Matrix<T> cadj = real.C_adj();
  try {
    if constexpr (FieldTraits<T>::is_quaternion) {
      const SliceForm sf = slice_decompose(p);
      if (sf.y == 0.0) return real.C * solve(id - sf.x0 * real.R0, cadj);
      // Sum_n p^n R0^n = (I - x R0) Q^{-1} + I y R0 Q^{-1}, Q = I - 2x R0 + |p|^2 R0^2.
      const Matrix<T> q = id - (2.0 * sf.x0) * real.R0 + norm(p) * (real.R0 * real.R0);
      const Matrix<T> x = solve(q, cadj);
      const Matrix<T> re = real.C * ((id - sf.x0 * real.R0) * x);
      const Matrix<T> im = (sf.y * (real.C * (real.R0 * x))).scaled_left(sf.axis);
      return re + im;
    } else {
      return real.C * solve(id - real.R0.scaled_left(p), cadj);
    }
  } catch (const PreconditionError&) {
    return std::nullopt;
  }
}

}  // namespace

template <class T>
RealizationValue<T> realization_eval(const Realization<T>& real, const T& p, int order) {
  if (order < 0) throw PreconditionError("realization_eval: order must be non-negative");
  require_contraction(real, p, "realization_eval");
  const std::size_t d = real.dim();
  RealizationValue<T> out;
  out.contraction = abs_of(p) * real.norm.bound;

  const auto moments = realization_moments(real, static_cast<std::size_t>(order));
  out.G = power_sum(moments, p);
  const Matrix<T> half = 0.5 * moments[0];
  out.phi_sharp = out.G - half - real.skew;
  out.phi_sharp_plus_skew = out.G - half + real.skew;
  out.reflected = power_sum(moments, T{-1.0} * p) - half - real.skew;

  if (real.state_dim() == 0) {
    out.closed_form = Matrix<T>(d, d);
    return out;
  }
  const double tail_e = abs_of(p) * real.norm.euclidean;
  const double tail_w = abs_of(p) * real.norm.weighted;
  double tail = std::numeric_limits<double>::infinity();
  if (tail_e < 1.0) tail = std::min(tail, moment_constant(real, false) * std::pow(tail_e, order + 1) / (1.0 - tail_e));
  if (tail_w < 1.0) tail = std::min(tail, moment_constant(real, true) * std::pow(tail_w, order + 1) / (1.0 - tail_w));
  out.tail_bound = tail;

  out.closed_form = resolvent_closed_form(real, p);
  if (out.closed_form) out.closed_form_discrepancy = (out.G - *out.closed_form).norm_fro();
  return out;
}

template <class T>
std::vector<double> moment_check(const Realization<T>& real, const OperatorSeries<T>& series, std::size_t nmax) {
  if (series.dim() != real.dim()) throw DimensionError("moment_check: dimension mismatch");
  const auto moments = realization_moments(real, nmax);
  std::vector<double> err(nmax + 1);
  const Matrix<T>& phi0 = series.coeffs()[0];
  err[0] = (moments[0] - (phi0 + phi0.adjoint())).norm_fro();
  for (std::size_t n = 1; n <= nmax; ++n) err[n] = (moments[n] - series.coeff(n).adjoint()).norm_fro();
  return err;
}

template <class T>
Matrix<T> observability(const Realization<T>& real, const T& z) {
  require_contraction(real, z, "observability");
  const std::size_t m = real.state_dim();
  const std::size_t d = real.dim();
  if (m == 0) return Matrix<T>(d, 0);
  if constexpr (!FieldTraits<T>::is_quaternion) {
    // E^* = (I - z R0)^{-*} C^*.
    const Matrix<T> lhs = (Matrix<T>::identity(m) - real.R0.scaled_left(z)).adjoint();
    return solve(lhs, real.C.adjoint()).adjoint();
  } else {
    const double az = abs_of(z);
    const double ke = op_norm(real.C);
    double kw = 0.0;
    for (std::size_t k = 0; k < m; ++k) kw = std::max(kw, real.scale[k]);
    {
      Matrix<T> left = real.C;
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t i = 0; i < d; ++i) left(i, k) = left(i, k) * (1.0 / real.scale[k]);
      kw *= op_norm(left);
    }
    std::vector<Matrix<T>> terms{real.C};
    Matrix<T> term = real.C;
    double ce = 1.0;
    double cw = 1.0;
    for (int n = 1; n < 100000; ++n) {
      term = term * real.R0;
      terms.push_back(term);
      ce *= az * real.norm.euclidean;
      cw *= az * real.norm.weighted;
      double rem = std::numeric_limits<double>::infinity();
      if (az * real.norm.euclidean < 1.0) rem = std::min(rem, ke * ce / (1.0 - az * real.norm.euclidean));
      if (az * real.norm.weighted < 1.0) rem = std::min(rem, kw * cw / (1.0 - az * real.norm.weighted));
      if (rem < 1e-18) break;
    }
    return power_sum(terms, z);
  }
}

template <class T>
Matrix<T> kernel_reconstruct(const Realization<T>& real, const T& z, const T& w) {
  const Matrix<T> ez = observability(real, z);
  const Matrix<T> ew = observability(real, w);
  if (real.state_dim() == 0) return Matrix<T>(real.dim(), real.dim());
  return ez * krein_adjoint(ew, real.J, Signature::identity(real.dim()));
}

template <class T>
CoisometryDefect coisometry_defect(const Realization<T>& real, std::size_t k) {
  CoisometryDefect out;
  const std::size_t m = real.state_dim();
  if (m == 0) return out;
  const Matrix<T> defect = real.R0 * real.R0_adj() - Matrix<T>::identity(m);
  const Matrix<T> r0adj = real.R0_adj();
  const std::size_t d = real.dim();

  Matrix<T> span(m, (k + 1) * d);
  Matrix<T> v = real.C_adj();
  for (std::size_t n = 0; n <= k; ++n) {
    span.set_block(0, n * d, v);
    v = r0adj * v;
  }
  const Matrix<T> q = orthonormal_basis(span);
  out.subspace_dim = q.cols();
  out.observable = q.cols() == 0 ? 0.0 : op_norm(defect * q);
  out.raw = op_norm(defect);
  return out;
}

template <class T>
std::vector<double> moment_equiv(const Realization<T>& a, const Realization<T>& b, std::size_t nmax) {
  if (a.dim() != b.dim()) throw DimensionError("moment_equiv: coefficient dimensions differ");
  const auto ma = realization_moments(a, nmax);
  const auto mb = realization_moments(b, nmax);
  std::vector<double> err(nmax + 1);
  for (std::size_t n = 0; n <= nmax; ++n) err[n] = (ma[n] - mb[n]).norm_fro();
  return err;
}

template <class T>
std::vector<double> krein_coefficient_moment_check(const Realization<T>& real_of_phi_jc,
                                                   const OperatorSeries<T>& phi, const Signature& jc,
                                                   std::size_t nmax) {
  if (jc.size() != phi.dim() || real_of_phi_jc.dim() != phi.dim())
    throw DimensionError("krein_coefficient_moment_check: dimension mismatch");
  const auto moments = realization_moments(real_of_phi_jc, nmax);
  std::vector<double> err(nmax + 1);
  const Matrix<T>& phi0 = phi.coeffs()[0];
  const Matrix<T> target0 = phi0 + apply_right(apply_left(jc, phi0.adjoint()), jc);
  err[0] = (apply_right(moments[0], jc) - target0).norm_fro();
  for (std::size_t n = 1; n <= nmax; ++n) {
    const Matrix<T> target = apply_right(apply_left(jc, phi.coeff(n).adjoint()), jc);
    err[n] = (apply_right(moments[n], jc) - target).norm_fro();
  }
  return err;
}

#define KREIN_REALIZE_INSTANTIATE(T)                                                                       \
  template struct ModelSpace<T>;                                                                           \
  template struct Realization<T>;                                                                          \
  template ModelSpace<T> build_model_space<T>(const KreinBasis<T>&, const GramSpec<T>&);                   \
  template Matrix<T> eval_model<T>(const ModelSpace<T>&, const T&);                                        \
  template Matrix<T> synthesized_kernel<T>(const ModelSpace<T>&, const T&, const T&);                      \
  template Matrix<T> build_C<T>(const ModelSpace<T>&);                                                     \
  template Matrix<T> build_R0<T>(const ModelSpace<T>&, const KreinBasis<T>&);                              \
  template double taylor_shift_defect<T>(const ModelSpace<T>&, const Matrix<T>&, std::size_t);             \
  template Realization<T> build_realization<T>(const ModelSpace<T>&, const KreinBasis<T>&,                 \
                                               const GramSpec<T>&);                                        \
  template std::vector<Matrix<T>> realization_moments<T>(const Realization<T>&, std::size_t);              \
  template RealizationValue<T> realization_eval<T>(const Realization<T>&, const T&, int);                  \
  template std::vector<double> moment_check<T>(const Realization<T>&, const OperatorSeries<T>&,            \
                                               std::size_t);                                               \
  template Matrix<T> observability<T>(const Realization<T>&, const T&);                                    \
  template Matrix<T> kernel_reconstruct<T>(const Realization<T>&, const T&, const T&);                     \
  template CoisometryDefect coisometry_defect<T>(const Realization<T>&, std::size_t);                      \
  template std::vector<double> moment_equiv<T>(const Realization<T>&, const Realization<T>&, std::size_t); \
  template std::vector<double> krein_coefficient_moment_check<T>(const Realization<T>&,                    \
                                                                 const OperatorSeries<T>&,                 \
                                                                 const Signature&, std::size_t);

KREIN_REALIZE_INSTANTIATE(Complex)
KREIN_REALIZE_INSTANTIATE(Quaternion)

#undef KREIN_REALIZE_INSTANTIATE

}  // namespace krein
