#pragma once

#include <cstddef>
#include <vector>

#include "krein/matrix.hpp"

namespace krein {

/// Eigenvalues ascending; columns of `vectors` are the matching orthonormal
/// eigenvectors (right eigenvectors over H: H u = u lambda).
template <class T>
struct EigDecomposition {
  std::vector<double> values;
  Matrix<T> vectors;
};

struct EigOptions {
  /// Allowed ||H - H^*|| relative to ||H||_F.
  double hermitian_tol = 1e-12;
  /// Relative gap used to match the doubled eigenvalues of chi(H).
  double pairing_tol = 1e-8;
  /// Relative spread below which a cluster of quaternionic eigenvalues is
  /// taken as degenerate and not refined further.
  double cluster_tol = 1e-13;
  int max_sweeps = 100;
};

/// Cyclic Jacobi for a complex Hermitian matrix.
///
/// A rotation is skipped once |h_pq| is negligible against both
/// sqrt(|h_pp h_qq|) and ||H||_F; sweeps stop when a full sweep applies no
/// rotation, which in particular gives off(H) <= 1e-13 ||H||_F.
EigDecomposition<Complex> herm_eig(const CMatrix& h, const EigOptions& opts = {});

/// chi(A + B j) = [[A, B], [-conj(B), conj(A)]], entrywise consistent with
/// chi_scalar so that chi(MN) = chi(M) chi(N).
CMatrix chi_embed(const QMatrix& m);

/// Reads A and B back from the top half of a matrix in the image of chi.
QMatrix unchi_embed(const CMatrix& c);

/// Hermitian eigendecomposition over H through chi.  Each eigenvalue of H is
/// returned once; throws PairingError when the spectrum of chi(H) does not
/// split into pairs within `pairing_tol`.
EigDecomposition<Quaternion> quat_herm_eig(const QMatrix& h, const EigOptions& opts = {});

inline EigDecomposition<Complex> hermitian_eig(const CMatrix& h, const EigOptions& opts = {}) {
  return herm_eig(h, opts);
}
inline EigDecomposition<Quaternion> hermitian_eig(const QMatrix& h, const EigOptions& opts = {}) {
  return quat_herm_eig(h, opts);
}

/// ||H - H^*||_F <= tol * ||H||_F.
template <class T>
bool is_hermitian(const Matrix<T>& h, double tol);

/// Diagonal fundamental symmetry with entries +-1.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<int> signs);
  /// Identity signature of size n.
  static Signature identity(std::size_t n) { return Signature(std::vector<int>(n, 1)); }
  /// Validates that `j` is diagonal with +-1 entries.
  template <class T>
  static Signature from_matrix(const Matrix<T>& j);

  std::size_t size() const noexcept { return signs_.size(); }
  int operator[](std::size_t i) const { return signs_[i]; }
  const std::vector<int>& signs() const noexcept { return signs_; }

  template <class T>
  Matrix<T> as_matrix() const {
    Matrix<T> m(size(), size());
    for (std::size_t i = 0; i < size(); ++i) m(i, i) = T{static_cast<double>(signs_[i])};
    return m;
  }

  bool operator==(const Signature&) const = default;

 private:
  std::vector<int> signs_;
};

/// Rows of `m` multiplied by the signs (J M).
template <class T>
Matrix<T> apply_left(const Signature& j, const Matrix<T>& m);
/// Columns of `m` multiplied by the signs (M J).
template <class T>
Matrix<T> apply_right(const Matrix<T>& m, const Signature& j);

/// X^{[*]} = J_out X^* J_in for X : (K_in, J_in) -> (K_out, J_out), where
/// J_out acts on the domain of X and J_in on its codomain.
template <class T>
Matrix<T> krein_adjoint(const Matrix<T>& a, const Signature& j_domain, const Signature& j_codomain);

/// Same as above with J given as matrices; both are validated.
template <class T>
Matrix<T> krein_adjoint(const Matrix<T>& a, const Matrix<T>& j_domain, const Matrix<T>& j_codomain);

/// Square case with one fundamental symmetry.
template <class T>
Matrix<T> krein_adjoint(const Matrix<T>& a, const Signature& j) {
  return krein_adjoint(a, j, j);
}

/// Solves M X = B by Gaussian elimination with partial pivoting.  Works over
/// the quaternions because every elimination step multiplies on the left.
/// Throws PreconditionError when a pivot falls below `singular_tol * ||M||`.
template <class T>
Matrix<T> solve(const Matrix<T>& m, const Matrix<T>& b, double singular_tol = 1e-14);

template <class T>
Matrix<T> inverse(const Matrix<T>& m, double singular_tol = 1e-14);

/// Spectral norm through the eigenvalues of M^* M.
template <class T>
double op_norm(const Matrix<T>& m);

/// Spectral norm estimate by power iteration on M^* M, deterministic start.
template <class T>
double op_norm_estimate(const Matrix<T>& m, int max_iter = 500, double rel_tol = 1e-13);

/// Largest |lambda| of a Hermitian matrix by power iteration.
template <class T>
double hermitian_norm_estimate(const Matrix<T>& h, int max_iter = 2000, double rel_tol = 1e-13);

/// Modified Gram-Schmidt (over the field T, right scalars) on the columns of
/// `vectors`; columns whose residual falls below `drop_tol` times their
/// original norm are dropped.  Returns an orthonormal basis as columns.
template <class T>
Matrix<T> orthonormal_basis(const Matrix<T>& vectors, double drop_tol = 1e-10);

}  // namespace krein
