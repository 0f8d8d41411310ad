#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "krein/gram.hpp"
#include "krein/krein_range.hpp"
#include "krein/linalg.hpp"
#include "krein/series.hpp"

namespace krein {

/// The functions F_k(z) = sum_n z^n (F_k)_n spanning the model space, with
///   (F_k)_n = R^{n+1} |lambda_k|^{1/2} (u_k)_{block n+1},  R = 1/r.
/// They form a Krein-orthonormal basis: [F_k, F_l] = s_k delta_kl.
template <class T>
struct ModelSpace {
  double r = 0.5;
  std::size_t dim = 0;
  std::size_t blocks = 0;
  std::vector<double> eigenvalues;
  std::vector<int> signs;
  /// Row block n holds the n-th Taylor coefficients of all F_k.
  Matrix<T> taylor;

  std::size_t kept() const noexcept { return signs.size(); }
  Signature fundamental_symmetry() const { return Signature(signs); }
  std::vector<T> coefficient(std::size_t k, std::size_t n) const;
  /// Ambient coordinates of F_k, i.e. |lambda_k|^{1/2} u_k.
  std::vector<T> coordinates(std::size_t k) const;
};

template <class T>
ModelSpace<T> build_model_space(const KreinBasis<T>& basis, const GramSpec<T>& spec);

/// d x m matrix with columns F_k(z); powers of z act on the left.
template <class T>
Matrix<T> eval_model(const ModelSpace<T>& model, const T& z);

/// sum_k s_k F_k(z) F_k(w)^*.
template <class T>
Matrix<T> synthesized_kernel(const ModelSpace<T>& model, const T& z, const T& w);

/// Column k is F_k(0).
template <class T>
Matrix<T> build_C(const ModelSpace<T>& model);

/// R0 = R Lambda^{-1/2} U^* S U Lambda^{1/2}, S the block left shift, so
/// that (F_k(z) - F_k(0)) / z = sum_l F_l(z) (R0)_{lk}.
template <class T>
Matrix<T> build_R0(const ModelSpace<T>& model, const KreinBasis<T>& basis);

/// max over n < `upto` of ||(F)_{n+1} - (F R0)_n||_F, the Taylor-table form
/// of the backward shift.
template <class T>
double taylor_shift_defect(const ModelSpace<T>& model, const Matrix<T>& r0, std::size_t upto);

/// Norms of R0 used for the spectral precondition: the Euclidean one and
/// ||Lambda^{1/2} R0 Lambda^{-1/2}|| = R ||U^* S U|| <= R.  `bound` is the
/// smaller of the two.
struct ShiftNorm {
  double euclidean = 0.0;
  double weighted = 0.0;
  double bound = 0.0;
};

template <class T>
struct Realization {
  Matrix<T> C;
  Matrix<T> R0;
  Signature J;
  Matrix<T> skew;  ///< (Phi_0 - Phi_0^*) / 2
  std::vector<double> scale;  ///< |lambda_k|^{1/2}
  ShiftNorm norm;

  std::size_t dim() const noexcept { return C.rows(); }
  std::size_t state_dim() const noexcept { return C.cols(); }
  /// C^{[*]} = J C^*.
  Matrix<T> C_adj() const;
  /// R0^{[*]} = J R0^* J.
  Matrix<T> R0_adj() const;
};

template <class T>
Realization<T> build_realization(const ModelSpace<T>& model, const KreinBasis<T>& basis, const GramSpec<T>& spec);

/// C R0^n C^{[*]} for n = 0..nmax.
template <class T>
std::vector<Matrix<T>> realization_moments(const Realization<T>& real, std::size_t nmax);

template <class T>
struct RealizationValue {
  Matrix<T> G;          ///< sum_{n <= order} p^n C R0^n C^{[*]}
  /// (1/2) C (I + pR0)(I - pR0)^{-*} C^{[*]} - skew = G - C C^{[*]} / 2 - skew.
  Matrix<T> phi_sharp;
  /// Same with + skew.
  Matrix<T> phi_sharp_plus_skew;
  /// (1/2) C (I - pR0)(I + pR0)^{-*} C^{[*]} - skew, which is phi_sharp at -p.
  Matrix<T> reflected;
  std::optional<Matrix<T>> closed_form;  ///< resolvent / slice formula
  double closed_form_discrepancy = 0.0;
  double contraction = 0.0;  ///< |p| * ShiftNorm::bound
  double tail_bound = 0.0;
};

/// Throws DivergenceError when |p| * ShiftNorm::bound >= 1.
template <class T>
RealizationValue<T> realization_eval(const Realization<T>& real, const T& p, int order);

/// e_0 = ||C C^{[*]} - (Phi_0 + Phi_0^*)||_F, e_n = ||C R0^n C^{[*]} - Phi_n^*||_F.
template <class T>
std::vector<double> moment_check(const Realization<T>& real, const OperatorSeries<T>& series, std::size_t nmax);

/// E(z) = sum_n z^n C R0^n; over C this is C (I - z R0)^{-1}.
template <class T>
Matrix<T> observability(const Realization<T>& real, const T& z);

/// E(z) E(w)^{[*]}, the adjoint taken through krein_adjoint.
template <class T>
Matrix<T> kernel_reconstruct(const Realization<T>& real, const T& z, const T& w);

struct CoisometryDefect {
  double observable = 0.0;
  double raw = 0.0;
  std::size_t subspace_dim = 0;
};

/// ||(R0 R0^{[*]} - I) Q|| with Q an orthonormal basis of
/// span{(R0^{[*]})^n C^{[*]} c : n <= K}; `raw` is the unrestricted norm.
template <class T>
CoisometryDefect coisometry_defect(const Realization<T>& real, std::size_t k);

/// ||C_A R0_A^n C_A^{[*]} - C_B R0_B^n C_B^{[*]}||_F for n = 0..nmax.
template <class T>
std::vector<double> moment_equiv(const Realization<T>& a, const Realization<T>& b, std::size_t nmax);

/// Moments of the problem with a Krein coefficient space (C, J_C): the
/// realization is built for Phi J_C and C R0^n C^{[*]} J_C is compared with
/// the Krein adjoints J_C Phi_n^* J_C (n >= 1) and Phi_0 + J_C Phi_0^* J_C
/// (n = 0).
template <class T>
std::vector<double> krein_coefficient_moment_check(const Realization<T>& real_of_phi_jc,
                                                   const OperatorSeries<T>& phi, const Signature& jc,
                                                   std::size_t nmax);

}  // namespace krein
