#include <gtest/gtest.h>

#include <array>
#include <random>

#include "usc/error.hpp"
#include "usc/qop.hpp"

using namespace usc;
using namespace usc::qop;

namespace {

CMatrix random_hermitian(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  CMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cplx(d(rng), d(rng));
  return 0.5 * (a + a.adjoint());
}

}  // namespace

TEST(Kron, IdentityTimesIdentity) {
  EXPECT_EQ(kron(identity(2), identity(3)), identity(6));
}

TEST(Kron, SigmaZWithIdentity) {
  CMatrix expected = CMatrix::Zero(4, 4);
  expected.diagonal() << 1, 1, -1, -1;
  EXPECT_EQ(kron(pauli_z(), identity(2)), expected);
}

TEST(Kron, SigmaXSigmaXIsInvolution) {
  const CMatrix xx = kron(pauli_x(), pauli_x());
  EXPECT_EQ(xx * xx, identity(4));
}

TEST(Kron, IndexLayout) {
  const CMatrix a = random_hermitian(2, 1), b = random_hermitian(3, 2);
  const CMatrix k = kron(a, b);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) EXPECT_EQ(k(i * 3 + p, j * 3 + q), a(i, j) * b(p, q));
}

TEST(Kron, Associative) {
  const CMatrix a = random_hermitian(2, 3), b = random_hermitian(3, 4), c = random_hermitian(2, 5);
  EXPECT_LT((kron(kron(a, b), c) - kron(a, kron(b, c))).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Annihilation, TwoLevel) {
  CMatrix expected = CMatrix::Zero(2, 2);
  expected(0, 1) = 1.0;
  EXPECT_EQ(annihilation(2), expected);
}

TEST(Annihilation, NumberOperatorIsDiagonalLadder) {
  const CMatrix a = annihilation(6);
  const CMatrix n = a.adjoint() * a;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) EXPECT_NEAR(std::abs(n(i, j) - (i == j ? double(i) : 0.0)), 0, 1e-14);
  EXPECT_LT((n - number_operator(6)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Annihilation, CommutatorBelowTruncation) {
  const int n = 7;
  const CMatrix a = annihilation(n);
  const CMatrix c = a * a.adjoint() - a.adjoint() * a;
  for (int i = 0; i < n - 1; ++i) EXPECT_NEAR(c(i, i).real(), 1.0, 1e-14);
  EXPECT_NEAR(c(n - 1, n - 1).real(), 1.0 - n, 1e-12);
}

TEST(Annihilation, RejectsTinyCutoff) {
  EXPECT_THROW(annihilation(1), Error);
}

TEST(Embed, DisjointSlotsCommute) {
  const std::array<int, 3> dims{2, 2, 3};
  const CMatrix z = embed(pauli_z(), 0, dims), x = embed(pauli_x(), 1, dims);
  EXPECT_EQ(z.rows(), 12);
  EXPECT_LT((z * x - x * z).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Embed, IdentityStaysIdentity) {
  const std::array<int, 3> dims{2, 2, 3};
  EXPECT_EQ(embed(identity(3), 2, dims), identity(12));
}

TEST(Embed, PauliIsTraceless) {
  const std::array<int, 3> dims{2, 2, 5};
  EXPECT_NEAR(std::abs(embed(pauli_z(), 0, dims).trace()), 0.0, 1e-15);
}

TEST(Embed, RejectsDimensionMismatch) {
  const std::array<int, 3> dims{2, 2, 3};
  EXPECT_THROW(embed(pauli_z(), 2, dims), Error);
  EXPECT_THROW(embed(pauli_z(), 3, dims), Error);
}

TEST(HermitianEig, PauliX) {
  const auto e = hermitian_eig(pauli_x());
  EXPECT_NEAR(e.values[0], -1.0, 1e-15);
  EXPECT_NEAR(e.values[1], 1.0, 1e-15);
}

TEST(HermitianEig, BiasedQubit) {
  const auto e = hermitian_eig(1.5 * pauli_z() + 2.0 * pauli_x());
  EXPECT_NEAR(e.values[0], -2.5, 1e-14);
  EXPECT_NEAR(e.values[1], 2.5, 1e-14);
}

TEST(HermitianEig, RandomResidualAndOrthonormality) {
  const CMatrix h = random_hermitian(50, 11);
  const auto e = hermitian_eig(h);
  const double norm = h.operatorNorm();
  EXPECT_LT(e.max_residual(h), 1e-9 * norm);
  EXPECT_LT(e.orthonormality_error(), 1e-10);
  for (int k = 1; k < e.values.size(); ++k) EXPECT_LE(e.values[k - 1], e.values[k]);
}

TEST(HermitianEig, PartialSpectrumMatchesFull) {
  const CMatrix h = random_hermitian(40, 12);
  const auto all = hermitian_eig(h, {.vectors = false});
  const auto some = hermitian_eig(h, {.count = 5});
  ASSERT_EQ(some.values.size(), 5);
  EXPECT_EQ(some.vectors.cols(), 5);
  EXPECT_LT((some.values - all.values.head(5)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT(some.max_residual(h), 1e-9 * h.operatorNorm());
}

TEST(HermitianEig, RealPathAgreesWithComplexPath) {
  const CMatrix h = random_hermitian(30, 13).real().cast<cplx>();
  ASSERT_TRUE(is_real(h));
  CMatrix nudged = h;
  nudged(0, 1) += cplx(0, 1e-300);
  nudged(1, 0) -= cplx(0, 1e-300);
  ASSERT_FALSE(is_real(nudged));
  EXPECT_LT((hermitian_eig(h).values - hermitian_eig(nudged).values).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(HermitianEig, RejectsNonHermitian) {
  CMatrix h = pauli_x();
  h(0, 1) = 2.0;
  try {
    hermitian_eig(h);
    FAIL() << "accepted a non-Hermitian matrix";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::non_hermitian);
    EXPECT_NE(std::string(e.what()).find("not Hermitian"), std::string::npos);
  }
}

TEST(HermitianEig, FlagsDegeneracy) {
  const auto e = hermitian_eig(identity(3));
  EXPECT_TRUE(e.has_degeneracy());
  EXPECT_FALSE(hermitian_eig(pauli_z()).has_degeneracy());
}

TEST(SymmetricEigenvalues, MatchesHermitianEig) {
  const RMatrix h = random_hermitian(25, 14).real();
  const RVector w = symmetric_eigenvalues(h, 6);
  const auto ref = hermitian_eig(h.cast<cplx>(), {.vectors = false});
  EXPECT_LT((w - ref.values.head(6)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(BandedEigenvalues, MatchesDenseSolver) {
  const int n = 30, kd = 3;
  std::mt19937_64 rng(15);
  std::normal_distribution<double> d;
  RMatrix dense = RMatrix::Zero(n, n), band = RMatrix::Zero(kd + 1, n);
  for (int j = 0; j < n; ++j)
    for (int i = std::max(0, j - kd); i <= j; ++i) {
      const double v = d(rng);
      dense(i, j) = dense(j, i) = v;
      band(kd + i - j, j) = v;
    }
  const RVector w = banded_eigenvalues(band, 8);
  EXPECT_LT((w - symmetric_eigenvalues(dense, 8)).cwiseAbs().maxCoeff(), 1e-12);
}
