#include <gtest/gtest.h>

#include <cmath>

#include "krein/scalars.hpp"
#include "support.hpp"

namespace krein {
namespace {

using testing::qdist;

TEST(Quaternion, UnitRelations) {
  EXPECT_EQ(kQuatI * kQuatJ, kQuatK);
  EXPECT_EQ(kQuatJ * kQuatK, kQuatI);
  EXPECT_EQ(kQuatK * kQuatI, kQuatJ);
  EXPECT_EQ(kQuatI * kQuatI, Quaternion{-1.0});
  EXPECT_EQ(kQuatI * kQuatJ * kQuatK, Quaternion{-1.0});
  EXPECT_EQ(kQuatJ * kQuatI, -kQuatK);
}

TEST(Quaternion, IdentityAndDistributivity) {
  const Quaternion q{2.0, 3.0, -1.0, 0.0};
  EXPECT_EQ(q * Quaternion{1.0}, q);
  EXPECT_EQ((Quaternion{1.0} + kQuatI) * (Quaternion{1.0} + kQuatJ), (Quaternion{1.0, 1.0, 1.0, 1.0}));
}

TEST(Quaternion, NormConjugateAndAssociativity) {
  testing::Rng g(11);
  for (int t = 0; t < 1000; ++t) {
    const auto a = testing::random_scalar<Quaternion>(g);
    const auto b = testing::random_scalar<Quaternion>(g);
    const auto c = testing::random_scalar<Quaternion>(g);
    EXPECT_NEAR(abs(a * b), abs(a) * abs(b), 1e-14);
    EXPECT_LT(qdist(conj(a * b), conj(b) * conj(a)), 1e-15);
    EXPECT_LT(qdist((a * b) * c, a * (b * c)), 1e-14);
    EXPECT_LT(qdist(a * conj(a), Quaternion{norm(a)}), 1e-15);
    EXPECT_LT(qdist(conj(a) * a, Quaternion{norm(a)}), 1e-15);
    EXPECT_LT(qdist(a * inverse(a), Quaternion{1.0}), 1e-13);
  }
}

TEST(SliceDecompose, Examples) {
  auto s = slice_decompose(Quaternion{1.0, 2.0, 0.0, 0.0});
  EXPECT_DOUBLE_EQ(s.x0, 1.0);
  EXPECT_DOUBLE_EQ(s.y, 2.0);
  EXPECT_EQ(s.axis, kQuatI);

  s = slice_decompose(Quaternion{3.0});
  EXPECT_DOUBLE_EQ(s.x0, 3.0);
  EXPECT_DOUBLE_EQ(s.y, 0.0);
  EXPECT_EQ(s.axis, kQuatI);

  s = slice_decompose(Quaternion{1.0, 1.0, 1.0, 1.0});
  const double r3 = 1.0 / std::sqrt(3.0);
  EXPECT_DOUBLE_EQ(s.x0, 1.0);
  EXPECT_NEAR(s.y, std::sqrt(3.0), 1e-15);
  EXPECT_LT(qdist(s.axis, Quaternion{0.0, r3, r3, r3}), 1e-15);
}

TEST(SliceDecompose, ReconstructsAndAxisSquaresToMinusOne) {
  testing::Rng g(5);
  for (int t = 0; t < 1000; ++t) {
    const auto q = testing::random_scalar<Quaternion>(g);
    const auto s = slice_decompose(q);
    EXPECT_LT(qdist(s.reconstruct(), q), 1e-14);
    EXPECT_LT(qdist(s.axis * s.axis, Quaternion{-1.0}), 1e-14);
    EXPECT_GE(s.y, 0.0);
  }
  // tiny imaginary part falls under the real-input convention
  EXPECT_EQ(slice_decompose(Quaternion{1.0, 1e-16, 0.0, 0.0}).axis, kQuatI);
}

TEST(ChiScalar, Examples) {
  const auto one = chi_scalar(Quaternion{1.0});
  EXPECT_EQ(one[0][0], Complex(1.0));
  EXPECT_EQ(one[0][1], Complex(0.0));
  EXPECT_EQ(one[1][0], Complex(0.0));
  EXPECT_EQ(one[1][1], Complex(1.0));

  const auto j = chi_scalar(kQuatJ);
  EXPECT_EQ(j[0][0], Complex(0.0));
  EXPECT_EQ(j[0][1], Complex(1.0));
  EXPECT_EQ(j[1][0], Complex(-1.0));
  EXPECT_EQ(j[1][1], Complex(0.0));

  const auto ci = chi_scalar(kQuatI);
  const auto ck = chi_scalar(kQuatK);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      Complex s = ci[a][0] * j[0][b] + ci[a][1] * j[1][b];
      EXPECT_EQ(s, ck[a][b]);
    }
}

TEST(ChiScalar, HomomorphismAndDeterminant) {
  testing::Rng g(7);
  for (int t = 0; t < 10000; ++t) {
    const auto p = testing::random_scalar<Quaternion>(g);
    const auto q = testing::random_scalar<Quaternion>(g);
    const auto cp = chi_scalar(p);
    const auto cq = chi_scalar(q);
    const auto cpq = chi_scalar(p * q);
    double err = 0.0;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) err += std::norm(cp[a][0] * cq[0][b] + cp[a][1] * cq[1][b] - cpq[a][b]);
    ASSERT_LE(std::sqrt(err), 1e-14 * (1.0 + abs(p) * abs(q)));
    const Complex det = cp[0][0] * cp[1][1] - cp[0][1] * cp[1][0];
    ASSERT_NEAR(det.real(), norm(p), 1e-14 * norm(p));
    ASSERT_NEAR(det.imag(), 0.0, 1e-14 * norm(p));
    ASSERT_LT(qdist(unchi_scalar(cp[0][0], cp[0][1]), p), 1e-15);
  }
}

}  // namespace
}  // namespace krein
