#include <gtest/gtest.h>

#include <cmath>

#include "krein/gram.hpp"
#include "krein/krein_range.hpp"
#include "support.hpp"

namespace krein {
namespace {

CMatrix linear_section(double r) {
  return CMatrix{{2 * r * r, 3 * std::pow(r, 3)}, {3 * std::pow(r, 3), 2 * std::pow(r, 4)}};
}

template <class T>
std::vector<T> column_scaled(const KreinBasis<T>& b, std::size_t k, double s) {
  auto v = b.vectors.col(k);
  for (auto& e : v) e = e * s;
  return v;
}

TEST(SpectralSplit, Examples) {
  const double r = 0.5;
  std::vector<double> d{2 * r * r, 2 * std::pow(r, 4), 2 * std::pow(r, 6)};
  auto b = spectral_split(CMatrix::diagonal(d));
  EXPECT_EQ(b.eigenvalues, (std::vector<double>{0.5, 0.125, 0.03125}));
  EXPECT_EQ(b.signature, (SignatureCount{3, 0, 0}));

  b = spectral_split(linear_section(r));
  EXPECT_EQ(b.signature, (SignatureCount{1, 1, 0}));

  b = spectral_split(CMatrix(6, 6));
  EXPECT_EQ(b.signature, (SignatureCount{0, 0, 6}));
  EXPECT_EQ(b.kept(), 0u);
}

TEST(SpectralSplit, CutoffAndWarnings) {
  std::vector<double> d{1.0, -5e-12, 1e-13, 0.5};
  const auto b = spectral_split(CMatrix::diagonal(d), 1e-12);
  EXPECT_EQ(b.signature, (SignatureCount{2, 1, 1}));
  EXPECT_EQ(b.eigenvalues, (std::vector<double>{1.0, 0.5, -5e-12}));
  EXPECT_EQ(b.near_cutoff, (std::vector<double>{-5e-12}));
  EXPECT_THROW(spectral_split(CMatrix::diagonal(d), 0.0), PreconditionError);
  EXPECT_THROW(spectral_split(CMatrix::diagonal(d), 1.0), PreconditionError);
  EXPECT_THROW(spectral_split(CMatrix{{1.0, 1.0}, {0.0, 1.0}}), PreconditionError);
}

template <class T>
void check_split_invariants(std::uint64_t seed) {
  testing::Rng g(seed);
  const std::size_t n = 12;
  const GramSpec<T> spec(testing::random_series<T>(g, 2, 3, 0.8), 0.6, n / 2);
  const auto p = build_form_matrix(spec).P;
  const double eps = 1e-6;
  const auto b = spectral_split(p, eps);
  const double scale = b.max_abs;
  EXPECT_LE((p - reconstruct(b)).norm_fro(), eps * scale * std::sqrt(double(n)));
  EXPECT_LE((b.vectors.adjoint() * b.vectors - Matrix<T>::identity(b.kept())).norm_fro(), 1e-12);
  EXPECT_EQ(b.signature.positive + b.signature.negative, b.kept());
  EXPECT_EQ(b.kept() + b.signature.zero, n);
  for (std::size_t k = 0; k < b.kept(); ++k) {
    EXPECT_GT(std::abs(b.eigenvalues[k]), eps * scale);
    if (k > 0) EXPECT_GE(std::abs(b.eigenvalues[k - 1]), std::abs(b.eigenvalues[k]));
    std::size_t big = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (norm(b.vectors(i, k)) > norm(b.vectors(big, k))) big = i;
    EXPECT_LE(std::sqrt(norm(b.vectors(big, k) - T{std::sqrt(norm(b.vectors(big, k)))})), 1e-15);
  }
  // polar decomposition P = sigma |P|, and |P| = (|P|^{1/2})^2
  EXPECT_LE((sigma_op(b) * abs_op(b) - reconstruct(b)).norm_fro(), 1e-14 * scale);
  EXPECT_LE((abs_sqrt(b) * abs_sqrt(b) - abs_op(b)).norm_fro(), 1e-14 * scale);
  const auto pi = kernel_projection(b);
  EXPECT_LE((pi * pi - pi).norm_fro(), 1e-13);
}

TEST(SpectralSplit, InvariantsComplexAndQuaternionic) {
  check_split_invariants<Complex>(1);
  check_split_invariants<Quaternion>(2);
}

TEST(SpectralSplit, SignatureStableAcrossADecade) {
  const std::vector<CMatrix> coeffs{CMatrix{{1.0}}, CMatrix{{3.0}}};
  const GramSpec<Complex> spec(OperatorSeries<Complex>(coeffs, 0.8), 0.5, 16);
  const auto p = build_form_matrix(spec).P;
  const auto ref = spectral_split(p, 1e-12).signature;
  EXPECT_EQ(ref, (SignatureCount{10, 6, 0}));
  for (double eps : {3e-13, 1e-12, 3e-12, 1e-11}) EXPECT_EQ(spectral_split(p, eps).signature, ref);
}

TEST(Forms, Examples) {
  const auto b = spectral_split(linear_section(0.5));
  for (std::size_t k = 0; k < 2; ++k) {
    const auto x = column_scaled(b, k, std::sqrt(std::abs(b.eigenvalues[k])));
    EXPECT_NEAR(hilbert_form(x, x, b).real(), 1.0, 1e-14);
    EXPECT_NEAR(krein_form(x, x, b).real(), b.signs[k], 1e-14);
  }
  const auto x0 = b.vectors.col(0);
  const auto x1 = b.vectors.col(1);
  EXPECT_LE(std::abs(hilbert_form(x0, x1, b)), 1e-14);
  // the indefinite case has a negative square
  bool negative = false;
  for (std::size_t k = 0; k < 2; ++k) negative |= krein_form(b.vectors.col(k), b.vectors.col(k), b).real() < 0.0;
  EXPECT_TRUE(negative);

  const auto pos = spectral_split(CMatrix::diagonal(std::vector<double>{3.0, 1.0, 0.5}));
  testing::Rng g(3);
  const auto u = testing::random_vector<Complex>(g, 3);
  const auto v = testing::random_vector<Complex>(g, 3);
  EXPECT_LE(std::abs(krein_form(u, v, pos) - hilbert_form(u, v, pos)), 1e-15);
}

template <class T>
void check_form_identities(std::uint64_t seed) {
  testing::Rng g(seed);
  const GramSpec<T> spec(testing::random_series<T>(g, 2, 3, 0.8), 0.6, 5);
  const auto p = build_form_matrix(spec).P;
  const auto b = spectral_split(p, 1e-10);
  const auto sq = abs_sqrt(b);
  const auto sigma = sigma_op(b);
  const auto pi = kernel_projection(b);
  const auto absp = abs_op(b);
  const double scale = 1.0 + b.max_abs;
  for (int t = 0; t < 10; ++t) {
    const auto f = testing::random_vector<T>(g, 10);
    const auto h = testing::random_vector<T>(g, 10);
    const auto x = matvec(sq, f);
    const auto y = matvec(sq, h);
    // <f, (I - pi) g>
    std::vector<T> proj = h;
    const auto pih = matvec(pi, h);
    for (std::size_t i = 0; i < h.size(); ++i) proj[i] -= pih[i];
    const T hil = hilbert_form(x, y, b);
    EXPECT_LE(std::sqrt(norm(hil - inner(f, proj))), 1e-11 * scale);
    EXPECT_LE(std::sqrt(norm(krein_form(x, y, b) - inner(matvec(sigma, f), proj))), 1e-11 * scale);
    // <x, sigma y>_P = [x, y]_P
    EXPECT_LE(std::sqrt(norm(hilbert_form(x, matvec(sigma, y), b) - krein_form(x, y, b))),
              1e-12 * (1.0 + std::sqrt(norm(krein_form(x, y, b)))));
    // [|P|^{1/2} f, P g]_P = <|P|^{1/2} f, g>
    const auto pg = matvec(p, h);
    EXPECT_LE(std::sqrt(norm(krein_form(x, pg, b) - inner(x, h))), 1e-11 * scale);
    // [Pf, Pg]_P = <Pf, g>, <Pf, Pg>_P = <|P| f, g>
    const auto pf = matvec(p, f);
    EXPECT_LE(std::sqrt(norm(krein_form(pf, pg, b) - inner(pf, h))), 1e-11 * scale);
    EXPECT_LE(std::sqrt(norm(hilbert_form(pf, pg, b) - inner(matvec(absp, f), h))), 1e-11 * scale);
    // positive definite on the range
    EXPECT_GT(real(hilbert_form(x, x, b)), 0.0);
  }
}

TEST(Forms, OperatorRangeIdentities) {
  check_form_identities<Complex>(4);
  check_form_identities<Quaternion>(5);
}

}  // namespace
}  // namespace krein
