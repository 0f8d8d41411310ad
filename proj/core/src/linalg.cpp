#include "krein/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

namespace krein {

namespace {

template <class T>
T start_entry(std::size_t i);

template <>
Complex start_entry<Complex>(std::size_t i) {
  const double t = static_cast<double>(i);
  return {1.0 + 0.37 * std::sin(1.3 * t + 0.2), 0.29 * std::cos(0.7 * t + 0.5)};
}

template <>
Quaternion start_entry<Quaternion>(std::size_t i) {
  const double t = static_cast<double>(i);
  return {1.0 + 0.37 * std::sin(1.3 * t + 0.2), 0.29 * std::cos(0.7 * t + 0.5),
          0.23 * std::sin(0.9 * t + 1.1), 0.19 * std::cos(1.7 * t + 0.3)};
}

template <class T>
std::vector<T> start_vector(std::size_t n) {
  std::vector<T> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = start_entry<T>(i);
  const double nx = vec_norm(x);
  for (auto& v : x) v = v / nx;
  return x;
}

}  // namespace

template <class T>
bool is_hermitian(const Matrix<T>& h, double tol) {
  if (!h.is_square()) return false;
  const double scale = h.norm_fro();
  if (scale == 0.0) return true;
  return (h - h.adjoint()).norm_fro() <= tol * scale;
}

EigDecomposition<Complex> herm_eig(const CMatrix& h, const EigOptions& opts) {
  if (!h.is_square()) throw PreconditionError("herm_eig: matrix is not square");
  if (!is_hermitian(h, opts.hermitian_tol))
    throw PreconditionError("herm_eig: matrix is not Hermitian within tolerance");
  const std::size_t n = h.rows();
  CMatrix a = hermitian_part(h);
  CMatrix v = CMatrix::identity(n);
  const double fro = a.norm_fro();
  const double floor_abs = 1e-20 * fro;

  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double b = std::abs(apq);
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        if (b <= floor_abs || b <= 1e-17 * std::sqrt(std::abs(app * aqq))) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        rotated = true;
        const Complex e = apq / b;
        const Complex ebar = std::conj(e);
        const double theta = (aqq - app) / (2.0 * b);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = t * cs;

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = cs * akp - sn * ebar * akq;
          a(k, q) = sn * akp + cs * ebar * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = cs * apk - sn * e * aqk;
          a(q, k) = sn * apk + cs * e * aqk;
        }
        a(p, p) = app - t * b;
        a(q, q) = aqq + t * b;
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = cs * vkp - sn * ebar * vkq;
          v(k, q) = sn * vkp + cs * ebar * vkq;
        }
      }
    }
    if (!rotated) {
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
      EigDecomposition<Complex> out{std::vector<double>(n), CMatrix(n, n)};
      for (std::size_t c = 0; c < n; ++c) {
        out.values[c] = a(order[c], order[c]).real();
        for (std::size_t k = 0; k < n; ++k) out.vectors(k, c) = v(k, order[c]);
      }
      return out;
    }
  }
  throw ConvergenceError("herm_eig: Jacobi sweeps did not converge");
}

CMatrix chi_embed(const QMatrix& m) {
  const std::size_t n = m.rows();
  const std::size_t c = m.cols();
  CMatrix out(2 * n, 2 * c);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      const Chi2x2 b = chi_scalar(m(i, j));
      out(i, j) = b[0][0];
      out(i, c + j) = b[0][1];
      out(n + i, j) = b[1][0];
      out(n + i, c + j) = b[1][1];
    }
  }
  return out;
}

QMatrix unchi_embed(const CMatrix& c) {
  if (c.rows() % 2 != 0 || c.cols() % 2 != 0) throw DimensionError("unchi_embed: odd dimensions");
  const std::size_t n = c.rows() / 2;
  const std::size_t m = c.cols() / 2;
  QMatrix out(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) out(i, j) = unchi_scalar(c(i, j), c(i, m + j));
  return out;
}

namespace {

EigDecomposition<Quaternion> quat_eig_impl(const QMatrix& h, const EigOptions& opts, int depth) {
  const std::size_t n = h.rows();
  const auto doubled = herm_eig(chi_embed(h), opts);

  double scale = 0.0;
  for (double x : doubled.values) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) scale = 1.0;
  const double gap_tol = opts.pairing_tol * scale;

  EigDecomposition<Quaternion> out{std::vector<double>(n), QMatrix(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = doubled.values[2 * i];
    const double hi = doubled.values[2 * i + 1];
    if (hi - lo > gap_tol) {
      std::ostringstream msg;
      msg << "quat_herm_eig: eigenvalues of chi(H) do not pair at index " << 2 * i << " (" << lo
          << " vs " << hi << ")";
      throw PairingError(msg.str(), doubled.values);
    }
    out.values[i] = 0.5 * (lo + hi);
  }

  // Each complex eigenvector (x; y) of chi(H) maps to x - conj(y) j, an
  // eigenvector of H.  Within a cluster of close eigenvalues the candidates
  // are orthonormalized over H by pivoted Gram-Schmidt; unless the cluster
  // is degenerate to rounding, H is then re-diagonalized on that subspace
  // after shifting by the cluster mean (Rayleigh-Ritz).
  std::size_t start = 0;
  while (start < n) {
    std::size_t stop = start + 1;
    while (stop < n && out.values[stop] - out.values[stop - 1] <= gap_tol) ++stop;
    const std::size_t want = stop - start;

    std::vector<std::vector<Quaternion>> cand;
    for (std::size_t c = 2 * start; c < 2 * stop; ++c) {
      std::vector<Quaternion> q(n);
      for (std::size_t k = 0; k < n; ++k)
        q[k] = unchi_scalar(doubled.vectors(k, c), -std::conj(doubled.vectors(n + k, c)));
      cand.push_back(std::move(q));
    }
    std::vector<std::vector<Quaternion>> accepted;
    std::vector<bool> used(cand.size(), false);
    while (accepted.size() < want) {
      std::size_t best = cand.size();
      double best_norm = -1.0;
      for (std::size_t c = 0; c < cand.size(); ++c) {
        if (used[c]) continue;
        const double nc = vec_norm(cand[c]);
        if (nc > best_norm) {
          best_norm = nc;
          best = c;
        }
      }
      if (best == cand.size() || best_norm <= 1e-8)
        throw ConvergenceError("quat_herm_eig: eigenvector extraction lost rank");
      used[best] = true;
      std::vector<Quaternion> u = cand[best];
      for (auto& x : u) x = x / best_norm;
      // second pass against rounding
      for (const auto& prev : accepted) {
        const Quaternion c = inner(u, prev);
        for (std::size_t k = 0; k < n; ++k) u[k] -= prev[k] * c;
      }
      const double nu = vec_norm(u);
      for (auto& x : u) x = x / nu;
      for (std::size_t c = 0; c < cand.size(); ++c) {
        if (used[c]) continue;
        const Quaternion proj = inner(cand[c], u);
        for (std::size_t k = 0; k < n; ++k) cand[c][k] -= u[k] * proj;
      }
      accepted.push_back(std::move(u));
    }

    QMatrix q(n, want);
    for (std::size_t a = 0; a < want; ++a) q.set_col(a, accepted[a]);
    const double spread = out.values[stop - 1] - out.values[start];
    if (want > 1 && depth < 4 && spread > opts.cluster_tol * scale) {
      double mu = 0.0;
      for (std::size_t i = start; i < stop; ++i) mu += out.values[i];
      mu /= static_cast<double>(want);
      QMatrix s = q.adjoint() * h * q;
      for (std::size_t i = 0; i < want; ++i) s(i, i) -= Quaternion{mu};
      const auto sub = quat_eig_impl(hermitian_part(s), opts, depth + 1);
      q = q * sub.vectors;
      for (std::size_t a = 0; a < want; ++a) out.values[start + a] = mu + sub.values[a];
    }
    for (std::size_t a = 0; a < want; ++a)
      for (std::size_t k = 0; k < n; ++k) out.vectors(k, start + a) = q(k, a);
    start = stop;
  }

  // Neighbouring eigenpairs just outside a cluster still mix at the level
  // eps ||H|| / gap; two Gram-Schmidt passes restore orthonormality while
  // moving the residual only by about eps ||H||.
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t a = 0; a < n; ++a) {
      std::vector<Quaternion> u = out.vectors.col(a);
      for (std::size_t b = 0; b < a; ++b) {
        const auto prev = out.vectors.col(b);
        const Quaternion c = inner(u, prev);
        for (std::size_t k = 0; k < n; ++k) u[k] -= prev[k] * c;
      }
      const double nu = vec_norm(u);
      for (auto& x : u) x = x / nu;
      out.vectors.set_col(a, u);
    }
  }
  return out;
}

}  // namespace

EigDecomposition<Quaternion> quat_herm_eig(const QMatrix& h, const EigOptions& opts) {
  if (!h.is_square()) throw PreconditionError("quat_herm_eig: matrix is not square");
  if (!is_hermitian(h, opts.hermitian_tol))
    throw PreconditionError("quat_herm_eig: matrix is not Hermitian within tolerance");
  return quat_eig_impl(h, opts, 0);
}

Signature::Signature(std::vector<int> signs) : signs_(std::move(signs)) {
  for (int s : signs_)
    if (s != 1 && s != -1) throw PreconditionError("signature entries must be +1 or -1");
}

template <class T>
Signature Signature::from_matrix(const Matrix<T>& j) {
  if (!j.is_square()) throw PreconditionError("signature matrix must be square");
  std::vector<int> s(j.rows());
  for (std::size_t r = 0; r < j.rows(); ++r) {
    for (std::size_t c = 0; c < j.cols(); ++c) {
      const T v = j(r, c);
      if (r != c) {
        if (!(v == T{})) throw PreconditionError("signature matrix must be diagonal");
        continue;
      }
      if (v == T{1.0}) {
        s[r] = 1;
      } else if (v == T{-1.0}) {
        s[r] = -1;
      } else {
        throw PreconditionError("signature matrix diagonal entries must be +1 or -1");
      }
    }
  }
  return Signature(std::move(s));
}

template <class T>
Matrix<T> apply_left(const Signature& j, const Matrix<T>& m) {
  if (j.size() != m.rows()) throw DimensionError("apply_left: signature size mismatch");
  Matrix<T> out = m;
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (j[r] < 0)
      for (auto& v : out.row(r)) v = -v;
  return out;
}

template <class T>
Matrix<T> apply_right(const Matrix<T>& m, const Signature& j) {
  if (j.size() != m.cols()) throw DimensionError("apply_right: signature size mismatch");
  Matrix<T> out = m;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (j[c] < 0) out(r, c) = -out(r, c);
  return out;
}

template <class T>
Matrix<T> krein_adjoint(const Matrix<T>& a, const Signature& j_domain, const Signature& j_codomain) {
  if (j_domain.size() != a.cols() || j_codomain.size() != a.rows())
    throw PreconditionError("krein_adjoint: signature sizes do not match the operator");
  return apply_right(apply_left(j_domain, a.adjoint()), j_codomain);
}

template <class T>
Matrix<T> krein_adjoint(const Matrix<T>& a, const Matrix<T>& j_domain, const Matrix<T>& j_codomain) {
  return krein_adjoint(a, Signature::from_matrix(j_domain), Signature::from_matrix(j_codomain));
}

template <class T>
Matrix<T> solve(const Matrix<T>& m, const Matrix<T>& b, double singular_tol) {
  if (!m.is_square()) throw DimensionError("solve: matrix is not square");
  if (b.rows() != m.rows()) throw DimensionError("solve: right-hand side has wrong row count");
  const std::size_t n = m.rows();
  Matrix<T> a = m;
  Matrix<T> x = b;
  const double scale = m.max_abs();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::sqrt(norm(a(k, k)));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::sqrt(norm(a(i, k)));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best <= singular_tol * scale || best == 0.0) throw PreconditionError("solve: matrix is singular");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      for (std::size_t j = 0; j < x.cols(); ++j) std::swap(x(k, j), x(piv, j));
    }
    const T pinv = inverse(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const T l = a(i, k) * pinv;
      if (l == T{}) continue;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= l * a(k, j);
      for (std::size_t j = 0; j < x.cols(); ++j) x(i, j) -= l * x(k, j);
    }
  }
  for (std::size_t ii = n; ii-- > 0;) {
    const T dinv = inverse(a(ii, ii));
    for (std::size_t j = 0; j < x.cols(); ++j) {
      T s = x(ii, j);
      for (std::size_t k = ii + 1; k < n; ++k) s -= a(ii, k) * x(k, j);
      x(ii, j) = dinv * s;
    }
  }
  return x;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& m, double singular_tol) {
  return solve(m, Matrix<T>::identity(m.rows()), singular_tol);
}

template <class T>
double op_norm(const Matrix<T>& m) {
  if (m.empty()) return 0.0;
  if constexpr (FieldTraits<T>::is_quaternion) {
    return op_norm(chi_embed(m));
  } else {
    const CMatrix g = m.rows() < m.cols() ? m * m.adjoint() : m.adjoint() * m;
    const auto eig = herm_eig(hermitian_part(g));
    return std::sqrt(std::max(0.0, eig.values.back()));
  }
}

template <class T>
double op_norm_estimate(const Matrix<T>& m, int max_iter, double rel_tol) {
  if (m.empty()) return 0.0;
  std::vector<T> x = start_vector<T>(m.cols());
  const Matrix<T> madj = m.adjoint();
  double est = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    std::vector<T> y = matvec(madj, matvec(m, x));
    const double ny = vec_norm(y);
    if (ny == 0.0) return 0.0;
    const double next = std::sqrt(ny);
    for (std::size_t i = 0; i < y.size(); ++i) x[i] = y[i] / ny;
    if (it > 0 && std::abs(next - est) <= rel_tol * next) return next;
    est = next;
  }
  return est;
}

template <class T>
double hermitian_norm_estimate(const Matrix<T>& h, int max_iter, double rel_tol) {
  if (h.empty()) return 0.0;
  std::vector<T> x = start_vector<T>(h.cols());
  double est = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    std::vector<T> y = matvec(h, x);
    const double ny = vec_norm(y);
    if (ny == 0.0) return 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) x[i] = y[i] / ny;
    if (it > 0 && std::abs(ny - est) <= rel_tol * ny) return ny;
    est = ny;
  }
  return est;
}

template <class T>
Matrix<T> orthonormal_basis(const Matrix<T>& vectors, double drop_tol) {
  std::vector<std::vector<T>> basis;
  for (std::size_t c = 0; c < vectors.cols(); ++c) {
    std::vector<T> v = vectors.col(c);
    const double n0 = vec_norm(v);
    if (n0 == 0.0) continue;
    for (auto& x : v) x = x / n0;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : basis) {
        const T proj = inner(v, u);
        for (std::size_t k = 0; k < v.size(); ++k) v[k] -= u[k] * proj;
      }
    }
    const double nv = vec_norm(v);
    if (nv <= drop_tol) continue;
    for (auto& x : v) x = x / nv;
    basis.push_back(std::move(v));
  }
  Matrix<T> out(vectors.rows(), basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c) out.set_col(c, basis[c]);
  return out;
}

QMatrix to_quaternion(const CMatrix& m) {
  QMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Quaternion::from_complex(m(i, j));
  return out;
}

#define KREIN_LINALG_INSTANTIATE(T)                                                          \
  template bool is_hermitian<T>(const Matrix<T>&, double);                                   \
  template Signature Signature::from_matrix<T>(const Matrix<T>&);                            \
  template Matrix<T> apply_left<T>(const Signature&, const Matrix<T>&);                      \
  template Matrix<T> apply_right<T>(const Matrix<T>&, const Signature&);                     \
  template Matrix<T> krein_adjoint<T>(const Matrix<T>&, const Signature&, const Signature&); \
  template Matrix<T> krein_adjoint<T>(const Matrix<T>&, const Matrix<T>&, const Matrix<T>&); \
  template Matrix<T> solve<T>(const Matrix<T>&, const Matrix<T>&, double);                   \
  template Matrix<T> inverse<T>(const Matrix<T>&, double);                                   \
  template double op_norm<T>(const Matrix<T>&);                                              \
  template double op_norm_estimate<T>(const Matrix<T>&, int, double);                        \
  template double hermitian_norm_estimate<T>(const Matrix<T>&, int, double);                 \
  template Matrix<T> orthonormal_basis<T>(const Matrix<T>&, double);

KREIN_LINALG_INSTANTIATE(Complex)
KREIN_LINALG_INSTANTIATE(Quaternion)

#undef KREIN_LINALG_INSTANTIATE

}  // namespace krein
