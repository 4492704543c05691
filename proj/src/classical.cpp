#include "tbell/classical.hpp"

#include "tbell/entropy.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace tbell {

namespace {

constexpr int kMaxBits = 20;

void check_bits(int n) {
  if (n < 1 || n > kMaxBits) {
    throw std::invalid_argument("problem size n must be in [1, " +
                                std::to_string(kMaxBits) + "], got " +
                                std::to_string(n));
  }
}

}  // namespace

void OracleSpec::validate() const {
  check_bits(n);
  if (s >= (std::uint64_t(1) << n)) {
    throw std::invalid_argument("marked item out of range for n=" +
                                std::to_string(n));
  }
}

int oracle_eval(const OracleSpec& spec, std::uint64_t x) {
  spec.validate();
  if (x >= (std::uint64_t(1) << spec.n)) {
    throw std::domain_error("oracle input " + std::to_string(x) +
                            " out of range for n=" + std::to_string(spec.n));
  }
  return x == spec.s ? 1 : 0;
}

void QuerySchedule::validate() const {
  check_bits(n);
  if (inputs.empty()) {
    throw std::invalid_argument("schedule must contain at least one query");
  }
  const std::uint64_t size = std::uint64_t(1) << n;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (inputs[i] >= size) {
      throw std::invalid_argument("schedule input " + std::to_string(inputs[i]) +
                                  " at position " + std::to_string(i + 1) +
                                  " out of range for n=" + std::to_string(n));
    }
  }
}

QuerySchedule sequential_schedule(int n) {
  check_bits(n);
  QuerySchedule schedule;
  schedule.n = n;
  const std::uint64_t size = std::uint64_t(1) << n;
  schedule.inputs.reserve(size);
  for (std::uint64_t x = 0; x < size; ++x) {
    schedule.inputs.push_back(x);
  }
  return schedule;
}

bool is_covering(const QuerySchedule& schedule) {
  schedule.validate();
  const std::uint64_t size = std::uint64_t(1) << schedule.n;
  std::vector<bool> seen(size, false);
  std::uint64_t distinct = 0;
  for (std::uint64_t x : schedule.inputs) {
    if (!seen[x]) {
      seen[x] = true;
      ++distinct;
    }
  }
  return distinct == size;
}

double schedule_success_probability(const QuerySchedule& schedule) {
  schedule.validate();
  const std::uint64_t size = std::uint64_t(1) << schedule.n;
  std::vector<bool> seen(size, false);
  std::uint64_t distinct = 0;
  for (std::uint64_t x : schedule.inputs) {
    if (!seen[x]) {
      seen[x] = true;
      ++distinct;
    }
  }
  return double(distinct) / double(size);
}

Eigen::Matrix2d classical_pair_joint(const QuerySchedule& schedule, int k) {
  schedule.validate();
  if (k < 0 || std::size_t(k) >= schedule.length()) {
    throw std::invalid_argument("pair index k=" + std::to_string(k) +
                                " out of range for schedule of length " +
                                std::to_string(schedule.length()));
  }
  const std::uint64_t size = std::uint64_t(1) << schedule.n;
  const double w = 1.0 / double(size);
  Eigen::Matrix2d joint = Eigen::Matrix2d::Zero();
  for (std::uint64_t s = 0; s < size; ++s) {
    // A_0 is the constant 0; A_k = F(x_k) for k >= 1.
    const int a = k == 0 ? 0 : int(schedule.inputs[k - 1] == s);
    const int b = int(schedule.inputs[k] == s);
    joint(a, b) += w;
  }
  return joint;
}

double classical_rhs_sum(const QuerySchedule& schedule) {
  schedule.validate();
  double sum = 0.0;
  for (std::size_t k = 0; k < schedule.length(); ++k) {
    sum += conditional_entropy(classical_pair_joint(schedule, int(k)));
  }
  return sum;
}

double classical_full_joint_entropy(const QuerySchedule& schedule) {
  schedule.validate();
  const std::uint64_t size = std::uint64_t(1) << schedule.n;
  // Output patterns are sparse: record the query positions that hit s.
  std::map<std::vector<std::uint32_t>, std::uint64_t> pattern_counts;
  std::vector<std::uint32_t> hits;
  for (std::uint64_t s = 0; s < size; ++s) {
    hits.clear();
    for (std::size_t i = 0; i < schedule.inputs.size(); ++i) {
      if (schedule.inputs[i] == s) {
        hits.push_back(std::uint32_t(i));
      }
    }
    ++pattern_counts[hits];
  }
  double h = 0.0;
  for (const auto& [pattern, count] : pattern_counts) {
    h += neg_x_log2_x(double(count) / double(size));
  }
  return h;
}

}  // namespace tbell
