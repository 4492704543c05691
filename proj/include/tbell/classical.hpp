#pragma once

// Deterministic classical oracle-search algorithms: a fixed schedule of
// queries x_1..x_L and the exact statistics of the output observables
// A_0, A_1, ..., A_L under a uniform prior on the marked item. A_0 is the
// constant 0, A_k = F(x_k). All distributions are obtained by enumerating
// the 2^n values of the marked item.

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace tbell {

struct OracleSpec {
  int n = 1;             // problem size in bits, 1 <= n <= 20
  std::uint64_t s = 0;   // marked item, 0 <= s < 2^n

  // Throws std::invalid_argument on a bad (n, s) combination.
  void validate() const;
};

// F(x): 1 iff x is the marked item. Throws std::domain_error if x out of range.
int oracle_eval(const OracleSpec& spec, std::uint64_t x);

struct QuerySchedule {
  int n = 1;
  std::vector<std::uint64_t> inputs;  // x_1 .. x_L

  std::size_t length() const { return inputs.size(); }
  void validate() const;
};

// The straightforward scan: inputs 0, 1, ..., 2^n - 1.
QuerySchedule sequential_schedule(int n);

// True iff every value in [0, 2^n) appears at least once.
bool is_covering(const QuerySchedule& schedule);

// Probability that the schedule queries the marked item at least once
// (1 for covering schedules).
double schedule_success_probability(const QuerySchedule& schedule);

// Exact joint of (A_k, A_{k+1}) under the uniform prior, rows = A_k.
// k = 0 pairs the constant A_0 with A_1. Valid k: 0 <= k <= L-1.
Eigen::Matrix2d classical_pair_joint(const QuerySchedule& schedule, int k);

// Sum over k of H(A_{k+1} | A_k); at least n for covering deterministic
// schedules with distinct inputs.
double classical_rhs_sum(const QuerySchedule& schedule);

// H(A_0, ..., A_L) under the uniform prior, computed by grouping the 2^n
// marked-item values by their output pattern (never materializes a table
// over 2^(L+1) outcomes). Equals n exactly for covering schedules with
// distinct inputs; meaningful for any schedule.
double classical_full_joint_entropy(const QuerySchedule& schedule);

}  // namespace tbell
