#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tbell/entropy.hpp"

#include "oracle_helpers.hpp"

#include <cmath>
#include <random>

using namespace tbell;

#define CHECK_NEAR(a, b, tol) CHECK(std::abs((a) - (b)) <= (tol))

namespace {

// Expected values below were frozen from oracle_helpers evaluated at long
// double precision and cross-checked with a 40-digit computation.
constexpr double kEntropyOneEighth = 0.5435644431995964;     // H(1/8, 7/8)
constexpr double kEntropy15Of64 = 0.7855602922535472;        // H(15/64)
constexpr double kClassicalPairEntropy = 0.5177136812595365; // (7/8) H(1/7)

Eigen::VectorXd random_dist(std::mt19937& gen, int m, bool allow_zeros = true) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  Eigen::VectorXd w(m);
  for (int i = 0; i < m; ++i) {
    const double u = uniform(gen);
    w(i) = (allow_zeros && uniform(gen) < 0.1) ? 0.0 : -std::log(1.0 - u);
  }
  if (w.sum() == 0.0) w(0) = 1.0;
  return w / w.sum();
}

}  // namespace

TEST_CASE("shannon entropy on known distributions") {
  CHECK_NEAR(shannon_entropy(Eigen::Vector2d(0.5, 0.5)), 1.0, 1e-15);
  CHECK_NEAR(shannon_entropy(Eigen::Vector2d(1.0, 0.0)), 0.0, 1e-15);

  const Eigen::Vector2d uneven(1.0 / 8.0, 7.0 / 8.0);
  CHECK_NEAR(shannon_entropy(uneven), kEntropyOneEighth, 1e-12);
  CHECK_NEAR(shannon_entropy(uneven),
             double(oracle::entropy({1.0L / 8.0L, 7.0L / 8.0L})), 1e-13);

  // Uniform over m outcomes saturates log2(m).
  CHECK_NEAR(shannon_entropy(Eigen::VectorXd::Constant(8, 1.0 / 8.0)), 3.0, 1e-12);
}

TEST_CASE("shannon entropy rejects invalid distributions") {
  Eigen::Vector2d negative(-0.25, 1.25);
  CHECK_THROWS_AS(shannon_entropy(negative), std::invalid_argument);
  Eigen::Vector2d off(0.5, 0.6);
  CHECK_THROWS_AS(shannon_entropy(off), std::invalid_argument);
  Eigen::VectorXd empty(0);
  CHECK_THROWS_AS(shannon_entropy(empty), std::invalid_argument);
  // Normalization slack below the tolerance is accepted.
  Eigen::Vector2d nearly(0.5, 0.5 + 0.5e-9);
  CHECK_NOTHROW(shannon_entropy(nearly));
}

TEST_CASE("binary entropy") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK_NEAR(binary_entropy(0.5), 1.0, 1e-15);
  CHECK_NEAR(binary_entropy(0.234375), kEntropy15Of64, 1e-12);
  CHECK_NEAR(binary_entropy(0.234375), double(oracle::binary_entropy(0.234375L)),
             1e-13);
  CHECK_THROWS_AS(binary_entropy(-0.1), std::domain_error);
  CHECK_THROWS_AS(binary_entropy(1.1), std::domain_error);
  CHECK_THROWS_AS(binary_entropy(std::nan("")), std::domain_error);
}

TEST_CASE("binary entropy is symmetric and equals the two-point entropy") {
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (int c = 0; c < 1000; ++c) {
    const double x = uniform(gen);
    CHECK_NEAR(binary_entropy(x), binary_entropy(1.0 - x), 1e-12);
    CHECK_NEAR(binary_entropy(x), shannon_entropy(Eigen::Vector2d(x, 1.0 - x)),
               1e-12);
  }
}

TEST_CASE("neg_x_log2_x") {
  CHECK(neg_x_log2_x(0.0) == 0.0);
  CHECK(neg_x_log2_x(1.0) == 0.0);
  CHECK_NEAR(neg_x_log2_x(0.5), 0.5, 1e-15);
  CHECK_NEAR(neg_x_log2_x(0.25), 0.5, 1e-15);  // -0.25 log2(0.25) = 0.25 * 2
  CHECK_THROWS_AS(neg_x_log2_x(1.5), std::domain_error);

  // f(x) >= f(1-x) on [0, 1/2], the lemma behind the analytic bound.
  for (int i = 0; i <= 500; ++i) {
    const double x = 0.5 * double(i) / 500.0;
    CHECK(neg_x_log2_x(x) >= neg_x_log2_x(1.0 - x) - 1e-12);
  }
}

TEST_CASE("conditional entropy on known pairs") {
  Eigen::Matrix2d correlated;
  correlated << 0.5, 0.0, 0.0, 0.5;
  CHECK_NEAR(conditional_entropy(correlated), 0.0, 1e-15);

  Eigen::Matrix2d independent = Eigen::Matrix2d::Constant(0.25);
  CHECK_NEAR(conditional_entropy(independent), 1.0, 1e-12);

  // Sequential-scan pair at n=3: {(0,0): 6/8, (0,1): 1/8, (1,0): 1/8, (1,1): 0}.
  Eigen::Matrix2d scan;
  scan << 6.0 / 8.0, 1.0 / 8.0, 1.0 / 8.0, 0.0;
  CHECK_NEAR(conditional_entropy(scan), kClassicalPairEntropy, 1e-12);
  CHECK_NEAR(conditional_entropy(scan),
             double(oracle::cond_entropy_2x2(6.0L / 8.0L, 1.0L / 8.0L,
                                             1.0L / 8.0L, 0.0L)),
             1e-13);

  Eigen::Matrix2d invalid;
  invalid << 0.7, 0.2, 0.2, 0.2;
  CHECK_THROWS_AS(conditional_entropy(invalid), std::invalid_argument);
}

TEST_CASE("joint entropy") {
  Eigen::Matrix2d independent = Eigen::Matrix2d::Constant(0.25);
  CHECK_NEAR(joint_entropy(independent), 2.0, 1e-12);

  Eigen::Matrix2d deterministic = Eigen::Matrix2d::Zero();
  deterministic(1, 0) = 1.0;
  CHECK_NEAR(joint_entropy(deterministic), 0.0, 1e-15);

  // Uniform one-hot patterns over 8 query slots: entropy equals H(s) = 3.
  Eigen::VectorXd onehot = Eigen::VectorXd::Zero(256);
  for (int s = 0; s < 8; ++s) onehot(1 << s) = 1.0 / 8.0;
  CHECK_NEAR(joint_entropy(onehot), 3.0, 1e-12);
}

TEST_CASE("property: chain rule and conditioning never increases entropy") {
  std::mt19937 gen(11);
  for (int c = 0; c < 1000; ++c) {
    const Eigen::MatrixXd joint = random_dist(gen, 4).reshaped(2, 2);
    const Eigen::Vector2d rows(joint.row(0).sum(), joint.row(1).sum());
    const Eigen::Vector2d cols(joint.col(0).sum(), joint.col(1).sum());
    CHECK_NEAR(joint_entropy(joint),
               shannon_entropy(rows) + conditional_entropy(joint),
               kEntropyIdentityTol);
    CHECK(conditional_entropy(joint) <=
          shannon_entropy(cols) + kEntropyIdentityTol);
  }
}

TEST_CASE("chain bound on known joints") {
  // Three independent fair bits: lhs = rhs = 3.
  const auto fair = chain_bound_check(Eigen::VectorXd::Constant(8, 1.0 / 8.0));
  CHECK_NEAR(fair.lhs, 3.0, 1e-12);
  CHECK_NEAR(fair.rhs, 3.0, 1e-12);
  CHECK(fair.holds);

  // Perfectly correlated chain of four bits: lhs = rhs = 1.
  Eigen::VectorXd chain = Eigen::VectorXd::Zero(16);
  chain(0b0000) = 0.5;
  chain(0b1111) = 0.5;
  const auto corr = chain_bound_check(chain);
  CHECK_NEAR(corr.lhs, 1.0, 1e-12);
  CHECK_NEAR(corr.rhs, 1.0, 1e-12);
  CHECK(corr.holds);
}

TEST_CASE("property: chain bound holds on random 4-variable joints") {
  std::mt19937 gen(13);
  for (int c = 0; c < 1000; ++c) {
    const auto result = chain_bound_check(random_dist(gen, 16));
    CHECK(result.holds);
    CHECK(result.rhs >= result.lhs - kEntropyIdentityTol);
  }
}

TEST_CASE("chain bound input validation") {
  CHECK_THROWS_AS(chain_bound_check(Eigen::Vector2d(0.5, 0.5)),
                  std::invalid_argument);  // m = 1
  Eigen::VectorXd odd = Eigen::VectorXd::Constant(12, 1.0 / 12.0);
  CHECK_THROWS_AS(chain_bound_check(odd), std::invalid_argument);  // not 2^m
  Eigen::VectorXd huge =
      Eigen::VectorXd::Constant(Eigen::Index(1) << 21, std::ldexp(1.0, -21));
  CHECK_THROWS_AS(chain_bound_check(huge), std::invalid_argument);  // m > 20
}

TEST_CASE("entropy works at long double precision") {
  using Vec2l = Eigen::Matrix<long double, 2, 1>;
  const long double h = shannon_entropy(Vec2l(0.125L, 0.875L));
  CHECK_NEAR(double(h), kEntropyOneEighth, 1e-14);
}
