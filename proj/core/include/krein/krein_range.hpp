#pragma once

#include <cstddef>
#include <vector>

#include "krein/linalg.hpp"
#include "krein/matrix.hpp"

namespace krein {

struct SignatureCount {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;

  bool operator==(const SignatureCount&) const = default;
};

/// Spectral split of a Hermitian P: the eigenpairs with |lambda| above the
/// relative cutoff, ordered by descending |lambda|.  Each eigenvector is
/// normalized so that its largest entry is real and positive.
template <class T>
struct KreinBasis {
  std::vector<double> eigenvalues;
  std::vector<int> signs;
  Matrix<T> vectors;  ///< ambient x kept, orthonormal columns
  double cutoff = 0.0;      ///< relative epsilon
  double max_abs = 0.0;     ///< max |lambda| over the full spectrum
  SignatureCount signature;
  /// Kept eigenvalues within three decades of the cutoff.
  std::vector<double> near_cutoff;

  std::size_t kept() const noexcept { return eigenvalues.size(); }
  std::size_t ambient_dim() const noexcept { return vectors.rows(); }
  Signature fundamental_symmetry() const { return Signature(signs); }
};

/// Throws PreconditionError unless 0 < eps < 1 and P is Hermitian.
template <class T>
KreinBasis<T> spectral_split(const Matrix<T>& p, double eps = 1e-12, const EigOptions& opts = {});

/// Coefficients u_k^* x of an ambient vector in the kept eigenbasis.
template <class T>
std::vector<T> eigen_coordinates(const std::vector<T>& x, const KreinBasis<T>& basis);

/// <f, (I - pi) g> for x = |P|^{1/2} f, y = |P|^{1/2} g:
///   sum_k conj(b_k) a_k / |lambda_k|,  a = U^* x, b = U^* y.
template <class T>
T hilbert_form(const std::vector<T>& x, const std::vector<T>& y, const KreinBasis<T>& basis);

/// <sigma f, (I - pi) g>: as hilbert_form with each term weighted by s_k.
template <class T>
T krein_form(const std::vector<T>& x, const std::vector<T>& y, const KreinBasis<T>& basis);

/// sum_k g(lambda_k) u_k u_k^*.
template <class T>
Matrix<T> spectral_function(const KreinBasis<T>& basis, double (*g)(double));

template <class T>
Matrix<T> abs_sqrt(const KreinBasis<T>& basis);
template <class T>
Matrix<T> abs_op(const KreinBasis<T>& basis);
template <class T>
Matrix<T> sigma_op(const KreinBasis<T>& basis);
/// Projection onto the numerical kernel, I - sum_k u_k u_k^*.
template <class T>
Matrix<T> kernel_projection(const KreinBasis<T>& basis);
/// sum_k lambda_k u_k u_k^*.
template <class T>
Matrix<T> reconstruct(const KreinBasis<T>& basis);

}  // namespace krein
