#pragma once

// Shannon-entropy building blocks over finite distributions, base-2 throughout.
//
// Distributions are plain Eigen dense objects: a probability vector for a
// single observable, an m x m matrix for an ordered pair (rows index the
// first observable), and a flat vector of 2^m entries for a joint of m
// binary observables (bit i of the entry index is the value of variable i).
// Every operation validates its input and throws std::invalid_argument /
// std::domain_error on bad data.

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace tbell {

inline constexpr double kProbSumTol = 1e-9;       // normalization tolerance
inline constexpr double kEntropyIdentityTol = 1e-12;
inline constexpr int kMaxJointVariables = 20;     // flat joints capped at 2^20 entries

// f(x) = -x log2 x, with f(0) = 0 by continuity (branch, not a limit).
template <typename Scalar>
Scalar neg_x_log2_x(Scalar x) {
  if (!(x >= Scalar(0) && x <= Scalar(1))) {
    throw std::domain_error("neg_x_log2_x: argument outside [0, 1]");
  }
  if (x == Scalar(0)) {
    return Scalar(0);
  }
  return -x * std::log2(x);
}

// H(x) = -x log2 x - (1-x) log2 (1-x).
template <typename Scalar>
Scalar binary_entropy(Scalar x) {
  if (!(x >= Scalar(0) && x <= Scalar(1))) {
    throw std::domain_error("binary_entropy: argument outside [0, 1]");
  }
  return neg_x_log2_x(x) + neg_x_log2_x(Scalar(1) - x);
}

namespace detail {

// -sum p log2 p over all coefficients, no validation.
template <typename Derived>
typename Derived::Scalar plugin_entropy(const Eigen::DenseBase<Derived>& table) {
  using Scalar = typename Derived::Scalar;
  const typename Derived::PlainObject t = table.derived();
  const auto flat = t.reshaped();
  Scalar h(0);
  for (Eigen::Index i = 0; i < flat.size(); ++i) {
    const Scalar p = flat(i);
    if (p > Scalar(0)) {
      h -= p * std::log2(p);
    }
  }
  return h;
}

}  // namespace detail

// Checks the distribution invariants: nonnegative weights summing to 1.
template <typename Derived>
void validate_distribution(const Eigen::DenseBase<Derived>& weights,
                           double tol = kProbSumTol) {
  using Scalar = typename Derived::Scalar;
  const typename Derived::PlainObject w = weights.derived();
  if (w.size() == 0) {
    throw std::invalid_argument("distribution: no outcomes");
  }
  const auto flat = w.reshaped();
  Scalar sum(0);
  for (Eigen::Index i = 0; i < flat.size(); ++i) {
    const Scalar p = flat(i);
    if (!(p >= Scalar(0))) {
      throw std::invalid_argument("distribution: negative weight at index " +
                                  std::to_string(i));
    }
    sum += p;
  }
  if (std::abs(double(sum) - 1.0) > tol) {
    throw std::invalid_argument("distribution: weights sum to " +
                                std::to_string(double(sum)) + ", expected 1");
  }
}

// H(X) = -sum_x p(x) log2 p(x), in bits.
template <typename Derived>
typename Derived::Scalar shannon_entropy(const Eigen::DenseBase<Derived>& dist) {
  validate_distribution(dist);
  return detail::plugin_entropy(dist);
}

// Entropy of the flattened table; works for pair tables and full joints alike.
template <typename Derived>
typename Derived::Scalar joint_entropy(const Eigen::DenseBase<Derived>& joint) {
  validate_distribution(joint);
  return detail::plugin_entropy(joint);
}

// H(Y|X) = H(X,Y) - H(X) for a pair table with rows indexing X.
// Tiny negative results from cancellation are clamped to zero.
template <typename Derived>
typename Derived::Scalar conditional_entropy(const Eigen::MatrixBase<Derived>& joint) {
  using Scalar = typename Derived::Scalar;
  validate_distribution(joint);
  const typename Derived::PlainObject j = joint.derived();
  const Scalar h_xy = detail::plugin_entropy(j);
  const Scalar h_x = detail::plugin_entropy(j.rowwise().sum());
  const Scalar h = h_xy - h_x;
  return h < Scalar(0) ? Scalar(0) : h;
}

// 2x2 marginal of variables (i, j) from a flat joint over m binary variables.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 2, 2> pair_marginal(
    const Eigen::DenseBase<Derived>& full, int i, int j) {
  using Scalar = typename Derived::Scalar;
  const typename Derived::PlainObject f = full.derived();
  const auto flat = f.reshaped();
  Eigen::Matrix<Scalar, 2, 2> m = Eigen::Matrix<Scalar, 2, 2>::Zero();
  for (Eigen::Index idx = 0; idx < flat.size(); ++idx) {
    const int a = int((idx >> i) & 1);
    const int b = int((idx >> j) & 1);
    m(a, b) += flat(idx);
  }
  return m;
}

template <typename Scalar>
struct ChainBoundResult {
  Scalar lhs;   // H(A_0, ..., A_{m-1})
  Scalar rhs;   // H(A_0) + sum_i H(A_{i+1} | A_i)
  bool holds;   // lhs <= rhs + kEntropyIdentityTol
};

// The (L+1)-observable entropic bound: the full joint entropy never exceeds
// H(A_0) plus the chain of successive-pair conditional entropies. Holds for
// every valid joint distribution; quantum pair statistics need not admit one.
template <typename Derived>
ChainBoundResult<typename Derived::Scalar> chain_bound_check(
    const Eigen::DenseBase<Derived>& full) {
  using Scalar = typename Derived::Scalar;
  const typename Derived::PlainObject f = full.derived();
  int m = 0;
  while ((Eigen::Index(1) << m) < f.size()) ++m;
  if ((Eigen::Index(1) << m) != f.size() || m < 2) {
    throw std::invalid_argument(
        "chain_bound_check: table size must be 2^m with m >= 2");
  }
  if (m > kMaxJointVariables) {
    throw std::invalid_argument("chain_bound_check: more than " +
                                std::to_string(kMaxJointVariables) +
                                " binary variables");
  }
  validate_distribution(f);

  const Scalar lhs = detail::plugin_entropy(f);
  Scalar rhs = detail::plugin_entropy(pair_marginal(f, 0, 1).rowwise().sum());
  for (int i = 0; i + 1 < m; ++i) {
    rhs += conditional_entropy(pair_marginal(f, i, i + 1));
  }
  return {lhs, rhs, lhs <= rhs + Scalar(kEntropyIdentityTol)};
}

}  // namespace tbell
