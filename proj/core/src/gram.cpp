#include "krein/gram.hpp"

#include <cmath>
#include <numbers>

namespace krein {

template <class T>
GramSpec<T>::GramSpec(OperatorSeries<T> series, double r, std::size_t blocks)
    : series_(std::move(series)), r_(r), blocks_(blocks) {
  const double r0 = series_.certified_radius();
  if (!(r > 0.0 && r < r0 && r0 < 1.0))
    throw PreconditionError("GramSpec: need 0 < r < r0 < 1, got r = " + std::to_string(r) +
                            ", r0 = " + std::to_string(r0));
  if (blocks == 0) throw PreconditionError("GramSpec: truncation order must be positive");
}

template <class T>
CoeffVector<T>::CoeffVector(std::size_t blocks, std::size_t dim, std::vector<T> flat)
    : blocks_(blocks), dim_(dim), data_(std::move(flat)) {
  if (data_.size() != blocks * dim) throw DimensionError("CoeffVector: flat data has wrong length");
}

template <class T>
CoeffVector<T> CoeffVector<T>::unit(std::size_t blocks, std::size_t dim, std::size_t u, std::size_t i) {
  if (u < 1 || u > blocks || i >= dim) throw DimensionError("CoeffVector::unit: index out of range");
  CoeffVector v(blocks, dim);
  v.at(u, i) = T{1.0};
  return v;
}

template <class T>
std::vector<T> CoeffVector<T>::block(std::size_t u) const {
  const auto first = data_.begin() + static_cast<std::ptrdiff_t>((u - 1) * dim_);
  return {first, first + static_cast<std::ptrdiff_t>(dim_)};
}

template <class T>
double CoeffVector<T>::weighted_norm2(double r) const {
  double s = 0.0;
  for (std::size_t u = 1; u <= blocks_; ++u) {
    const double w = std::pow(r, -2.0 * static_cast<double>(u));
    for (std::size_t i = 0; i < dim_; ++i) s += w * norm(at(u, i));
  }
  return s;
}

template <class T>
CoeffVector<T> shift_T(const CoeffVector<T>& f) {
  CoeffVector<T> out(f.blocks(), f.dim());
  for (std::size_t u = 1; u < f.blocks(); ++u)
    for (std::size_t i = 0; i < f.dim(); ++i) out.at(u, i) = f.at(u + 1, i);
  return out;
}

template <class T>
CoeffVector<T> mult_inverse_variable(const CoeffVector<T>& g) {
  CoeffVector<T> out(g.blocks(), g.dim());
  for (std::size_t u = 2; u <= g.blocks(); ++u)
    for (std::size_t i = 0; i < g.dim(); ++i) out.at(u, i) = g.at(u - 1, i);
  return out;
}

namespace {

template <class T>
void check_vector(const CoeffVector<T>& f, const GramSpec<T>& spec, const char* what) {
  if (f.blocks() != spec.blocks() || f.dim() != spec.dim())
    throw DimensionError(std::string(what) + ": coefficient vector shape does not match the spec");
}

/// g^* M f for d-vectors.
template <class T>
T sandwich(const Matrix<T>& m, const std::vector<T>& f, const std::vector<T>& g) {
  return inner(matvec(m, f), g);
}

}  // namespace

template <class T>
T form_coeff(const CoeffVector<T>& f, const CoeffVector<T>& g, const GramSpec<T>& spec) {
  check_vector(f, spec, "form_coeff");
  check_vector(g, spec, "form_coeff");
  const auto& phi = spec.series();
  const std::size_t n = spec.blocks();
  const std::size_t len = phi.length();
  std::vector<Matrix<T>> adj;
  adj.reserve(len);
  for (const auto& c : phi.coeffs()) adj.push_back(c.adjoint());

  T total{};
  for (std::size_t v = 1; v <= n; ++v) {
    const auto fv = f.block(v);
    for (std::size_t u = 1; u <= v; ++u) {
      if (v - u >= len) continue;
      total += sandwich(phi.coeffs()[v - u], fv, g.block(u));
    }
  }
  for (std::size_t u = 1; u <= n; ++u) {
    const auto gu = g.block(u);
    for (std::size_t v = 1; v <= u; ++v) {
      if (u - v >= len) continue;
      total += sandwich(adj[u - v], f.block(v), gu);
    }
  }
  return total;
}

template <class T>
GramOperator<T> build_form_matrix(const GramSpec<T>& spec) {
  const auto& phi = spec.series();
  const std::size_t n = spec.blocks();
  const std::size_t d = spec.dim();
  const std::size_t len = phi.length();

  GramOperator<T> out{Matrix<T>(n * d, n * d), Matrix<T>(n * d, n * d), std::vector<double>(n)};
  for (std::size_t u = 0; u < n; ++u) out.weights[u] = std::pow(spec.r(), static_cast<double>(u + 1));

  const Matrix<T> diag = phi.coeffs()[0] + phi.coeffs()[0].adjoint();
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v <= u; ++v) {
      const std::size_t k = u - v;
      if (k >= len) continue;
      const Matrix<T> blk = k == 0 ? diag : phi.coeffs()[k].adjoint();
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          if (k == 0 && j > i) continue;
          const T val = blk(i, j);
          out.A(u * d + i, v * d + j) = val;
          out.A(v * d + j, u * d + i) = conj(val);
        }
      }
    }
  }
  for (std::size_t a = 0; a < n * d; ++a) {
    for (std::size_t b = 0; b < n * d; ++b) {
      const double w = out.weights[a / d] * out.weights[b / d];
      out.P(a, b) = out.A(a, b) * w;
    }
  }
  return out;
}

template <class T>
T form_contour(const CoeffVector<T>& f, const CoeffVector<T>& g, const GramSpec<T>& spec, int nodes) {
  if constexpr (FieldTraits<T>::is_quaternion) {
    throw UnsupportedFieldError("form_contour: the contour form is defined over the complex field only");
  } else {
    check_vector(f, spec, "form_contour");
    check_vector(g, spec, "form_contour");
    if (nodes < 64 || (nodes & (nodes - 1)) != 0)
      throw PreconditionError("form_contour: nodes must be a power of two >= 64");
    const auto& phi = spec.series();
    const std::size_t d = spec.dim();
    const std::size_t n = spec.blocks();
    const double r = spec.r();

    auto eval_neg = [&](const CoeffVector<Complex>& c, Complex a) {
      // sum_u c_u a^{-u} by Horner in 1/a
      const Complex ainv = 1.0 / a;
      std::vector<Complex> acc(d);
      for (std::size_t u = n; u >= 1; --u) {
        for (std::size_t i = 0; i < d; ++i) acc[i] = (acc[i] + c.at(u, i)) * ainv;
      }
      return acc;
    };

    std::vector<Complex> pts(static_cast<std::size_t>(nodes));
    std::vector<std::vector<Complex>> fa(pts.size()), gb(pts.size()), phif(pts.size()), phig(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const double th = 2.0 * std::numbers::pi * static_cast<double>(k) / nodes;
      pts[k] = std::polar(r, th);
      const CMatrix ph = eval(phi, pts[k]);
      fa[k] = eval_neg(f, pts[k]);
      gb[k] = eval_neg(g, pts[k]);
      phif[k] = matvec(ph, fa[k]);
      phig[k] = matvec(ph, gb[k]);
    }

    // da d(conj b) = (i a dtheta)(-i conj(b) dpsi) = a conj(b) dtheta dpsi.
    Complex total{};
    for (std::size_t s = 0; s < pts.size(); ++s) {
      Complex row{};
      for (std::size_t t = 0; t < pts.size(); ++t) {
        const Complex ab = pts[t] * std::conj(pts[s]);
        const Complex w = ab / (1.0 - ab);
        row += w * (inner(phif[t], gb[s]) + inner(fa[t], phig[s]));
      }
      total += row;
    }
    return total / (static_cast<double>(nodes) * nodes);
  }
}

std::vector<Complex> apply_P_cauchy(const GramSpec<Complex>& spec, Complex w, const std::vector<Complex>& xi,
                                    Complex b) {
  const double r = spec.r();
  if (!(std::abs(w) < r)) throw DomainError("apply_P_cauchy: need |w| < r");
  if (std::abs(std::abs(b) - r) > 1e-12 * r) throw DomainError("apply_P_cauchy: need |b| = r");
  if (xi.size() != spec.dim()) throw DimensionError("apply_P_cauchy: xi has wrong length");
  const auto& phi = spec.series();
  const CMatrix k = eval(phi, b).adjoint() + eval(phi, std::conj(w));
  const Complex scale = (r * r / b) / (1.0 - std::conj(b) * std::conj(w));
  std::vector<Complex> out = matvec(k, xi);
  for (auto& v : out) v *= scale;
  return out;
}

template <class T>
CoeffVector<T> cauchy_vector(const T& a, const std::vector<T>& c, std::size_t blocks, double r) {
  if (!(std::sqrt(norm(a)) < r)) throw DomainError("cauchy_vector: need |a| < r");
  CoeffVector<T> out(blocks, c.size());
  const T abar = conj(a);
  T pw{1.0};
  for (std::size_t u = 1; u <= blocks; ++u) {
    for (std::size_t i = 0; i < c.size(); ++i) out.at(u, i) = pw * c[i];
    pw = pw * abar;
  }
  return out;
}

template <class T>
Matrix<T> kernel_phi(const OperatorSeries<T>& phi, const T& p, const T& q) {
  const Matrix<T> x = eval(phi, p) + eval(phi, q).adjoint();
  if constexpr (FieldTraits<T>::is_quaternion) {
    const double ratio = std::sqrt(norm(p) * norm(q));
    if (!(ratio < 1.0)) throw DomainError("kernel_phi: need |p||q| < 1");
    const T qbar = conj(q);
    Matrix<T> term = x;
    Matrix<T> sum = x;
    double geo = 1.0;
    while (geo > 1e-18) {
      term = term.scaled_left(p).scaled_right(qbar);
      sum += term;
      geo *= ratio;
    }
    return sum;
  } else {
    return x.scaled_left(1.0 / (1.0 - p * std::conj(q)));
  }
}

template <class T>
NormBound norm_bound_check(const GramSpec<T>& spec, int samples) {
  const auto op = build_form_matrix(spec);
  NormBound out;
  out.norm_estimate = hermitian_norm_estimate(op.P);
  out.max_phi = sample_max_norm(spec.series(), spec.r0(), samples);
  const double r0 = spec.r0();
  out.bound = 2.0 * out.max_phi * r0 * r0 / ((1.0 - r0 * r0) * (1.0 - r0 * r0));
  out.pass = out.norm_estimate <= out.bound * (1.0 + 1e-12);
  return out;
}

#define KREIN_GRAM_INSTANTIATE(T)                                                                     \
  template class GramSpec<T>;                                                                         \
  template class CoeffVector<T>;                                                                      \
  template CoeffVector<T> shift_T<T>(const CoeffVector<T>&);                                          \
  template CoeffVector<T> mult_inverse_variable<T>(const CoeffVector<T>&);                            \
  template T form_coeff<T>(const CoeffVector<T>&, const CoeffVector<T>&, const GramSpec<T>&);         \
  template GramOperator<T> build_form_matrix<T>(const GramSpec<T>&);                                  \
  template T form_contour<T>(const CoeffVector<T>&, const CoeffVector<T>&, const GramSpec<T>&, int); \
  template CoeffVector<T> cauchy_vector<T>(const T&, const std::vector<T>&, std::size_t, double);     \
  template Matrix<T> kernel_phi<T>(const OperatorSeries<T>&, const T&, const T&);                     \
  template NormBound norm_bound_check<T>(const GramSpec<T>&, int);

KREIN_GRAM_INSTANTIATE(Complex)
KREIN_GRAM_INSTANTIATE(Quaternion)

#undef KREIN_GRAM_INSTANTIATE

}  // namespace krein
