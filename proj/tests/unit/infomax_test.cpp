#include "infomax/errors.hpp"
#include "infomax/infomax.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

namespace infomax {
namespace {

// Reference values computed with mpmath at 30 digits.
constexpr double kTanh1 = 0.761594155955764888119458282605;
constexpr double kEntropyW2X05 = -0.174414480406109064635757248342;
constexpr double kGradStdW2X05 = -0.261594155955764888119458282605;
constexpr double kGradNatW2X05 = -1.04637662382305955247783313042;

Matrix scalar(double v) { return Matrix::Constant(1, 1, v); }

// Central finite differences of the objective, entry by entry.
Matrix finite_difference_gradient(const Matrix& w, const Matrix& x, double step) {
  Matrix g(w.rows(), w.cols());
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
      Matrix plus = w, minus = w;
      plus(i, j) += step;
      minus(i, j) -= step;
      g(i, j) = (entropy_objective(plus, x) - entropy_objective(minus, x)) / (2 * step);
    }
  }
  return g;
}

// Per-sample accumulation straight from the outer-product formula.
Matrix naive_standard(const Matrix& w, const Matrix& x) {
  Matrix acc = Matrix::Zero(w.rows(), w.cols());
  for (Eigen::Index n = 0; n < x.cols(); ++n) {
    const Vector u = w * x.col(n);
    Vector psi(u.size());
    for (Eigen::Index i = 0; i < u.size(); ++i) psi(i) = -2.0 * std::tanh(u(i));
    acc += psi * x.col(n).transpose();
  }
  return w.inverse().transpose() + acc / static_cast<double>(x.cols());
}

TEST(Activation, Values) {
  EXPECT_EQ(activation_tanh(scalar(0.0))(0, 0), 0.0);
  EXPECT_NEAR(activation_tanh(scalar(1.0))(0, 0), kTanh1, 1e-15);

  std::mt19937_64 rng(3);
  const Matrix u = testing::random_matrix(4, 9, rng, -30, 30);
  EXPECT_EQ(activation_tanh(-u), -activation_tanh(u));
  const Matrix y = activation_tanh(testing::random_matrix(4, 9, rng, -3, 3));
  EXPECT_LT(y.cwiseAbs().maxCoeff(), 1.0);
}

TEST(Psi, Values) {
  EXPECT_EQ(psi_tanh(scalar(0.0))(0, 0), 0.0);
  EXPECT_EQ(psi_tanh(scalar(0.5))(0, 0), -1.0);
  EXPECT_EQ(psi_tanh(scalar(1.0))(0, 0), -2.0);
  EXPECT_EQ(psi_tanh(scalar(-1.0))(0, 0), 2.0);
}

TEST(Psi, MatchesDerivativeRatio) {
  // h' = 1 - tanh², h'' = -2 tanh (1 - tanh²)
  for (double u : {-2.0, -1.0, 0.3, 1.7}) {
    const double t = std::tanh(u);
    const double ratio = (-2.0 * t * (1 - t * t)) / (1 - t * t);
    EXPECT_NEAR(psi_tanh(activation_tanh(scalar(u)))(0, 0), ratio, 1e-12);
  }
}

TEST(Entropy, Examples) {
  EXPECT_EQ(entropy_objective(Matrix::Identity(3, 3), Matrix::Zero(3, 1)), 0.0);
  EXPECT_NEAR(entropy_objective(scalar(2.0), scalar(0.5)), kEntropyW2X05, 1e-12);
  for (double c : {0.1, 2.0, -7.5}) {
    EXPECT_NEAR(entropy_objective(scalar(c), scalar(0.0)), std::log(std::abs(c)), 1e-14);
  }
}

TEST(Entropy, StableForLargeOutputs) {
  // ln(1 - tanh²(40)) would be -inf with the naive form; 2·ln sech(40) ≈ 2(ln 2 - 40).
  const double v = entropy_objective(scalar(1.0), scalar(40.0));
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_NEAR(v, 2 * (std::log(2.0) - 40.0), 1e-12);
}

TEST(Entropy, SingularThrows) {
  EXPECT_THROW(entropy_objective(Matrix::Zero(2, 2), Matrix::Ones(2, 3)), SingularMatrixError);
  Matrix rank1(2, 2);
  rank1 << 1, 2, 2, 4;
  EXPECT_THROW(entropy_objective(rank1, Matrix::Ones(2, 3)), SingularMatrixError);
}

TEST(GradientStandard, Examples) {
  EXPECT_EQ(gradient_standard(scalar(1.0), scalar(0.0))(0, 0), 1.0);
  EXPECT_NEAR(gradient_standard(scalar(2.0), scalar(0.5))(0, 0), kGradStdW2X05, 1e-15);

  std::mt19937_64 rng(8);
  const Matrix w = testing::random_well_conditioned(4, rng);
  EXPECT_LT((gradient_standard(w, Matrix::Zero(4, 6)) - w.inverse().transpose()).norm(), 1e-12);
}

TEST(GradientStandard, MatchesPerSampleLoop) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index n = 1 + trial % 5;
    const Matrix w = testing::random_well_conditioned(n, rng);
    const Matrix x = testing::random_matrix(n, 1 + trial % 8, rng, -2, 2);
    EXPECT_LT(testing::relative_frobenius(gradient_standard(w, x), naive_standard(w, x)), 1e-12);
  }
}

TEST(GradientStandard, MatchesFiniteDifferences) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const Eigen::Index n = 1 + trial % 5;
    const Matrix w = testing::random_well_conditioned(n, rng);
    const Matrix x = testing::random_matrix(n, 1 + trial % 8, rng, -2, 2);
    const Matrix fd = finite_difference_gradient(w, x, 1e-6);
    const Matrix g = gradient_standard(w, x);
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      const double rel = std::abs(g(i) - fd(i)) / std::max(1.0, std::abs(fd(i)));
      EXPECT_LT(rel, 1e-5) << "trial " << trial << " entry " << i;
    }
  }
}

TEST(GradientStandard, SingularThrows) {
  Matrix w(2, 2);
  w << 1, 1, 1, 1 + 1e-14;
  EXPECT_THROW(gradient_standard(w, Matrix::Ones(2, 4)), SingularMatrixError);
}

TEST(GradientNatural, Examples) {
  std::mt19937_64 rng(4);
  const Matrix w = testing::random_matrix(3, 3, rng);
  EXPECT_EQ(gradient_natural(w, Matrix::Zero(3, 5)), w);
  EXPECT_NEAR(gradient_natural(scalar(2.0), scalar(0.5))(0, 0), kGradNatW2X05, 1e-14);
}

TEST(GradientNatural, EqualsStandardTimesWtW) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index n = 1 + trial % 6;
    const Matrix w = testing::random_well_conditioned(n, rng);
    const Matrix x = testing::random_matrix(n, 1 + trial % 10, rng, -2, 2);
    const Matrix lhs = gradient_natural(w, x);
    const Matrix rhs = gradient_standard(w, x) * w.transpose() * w;
    EXPECT_LT(testing::relative_frobenius(lhs, rhs), 1e-12);
  }
}

TEST(GradientNatural, SingularWIsFine) {
  EXPECT_NO_THROW(gradient_natural(Matrix::Zero(2, 2), Matrix::Ones(2, 3)));
}

TEST(Gradients, InvariantToSampleOrder) {
  std::mt19937_64 rng(31);
  const Matrix w = testing::random_well_conditioned(3, rng);
  const Matrix x = testing::random_matrix(3, 8, rng, -2, 2);
  Eigen::PermutationMatrix<Eigen::Dynamic> perm(8);
  perm.setIdentity();
  std::shuffle(perm.indices().data(), perm.indices().data() + 8, rng);
  const Matrix shuffled = x * perm;
  EXPECT_LT((gradient_standard(w, x) - gradient_standard(w, shuffled)).norm(), 1e-13);
  EXPECT_LT((gradient_natural(w, x) - gradient_natural(w, shuffled)).norm(), 1e-13);
}

TEST(Gradients, DimensionMismatch) {
  EXPECT_THROW(gradient_natural(Matrix::Identity(3, 3), Matrix::Ones(2, 4)), InvalidArgument);
  EXPECT_THROW(gradient_standard(Matrix::Identity(2, 2), Matrix::Ones(2, 0)), InvalidArgument);
  EXPECT_THROW(entropy_objective(Matrix::Ones(2, 3), Matrix::Ones(3, 1)), InvalidArgument);
}

}  // namespace
}  // namespace infomax
