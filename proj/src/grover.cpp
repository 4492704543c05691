#include "tbell/grover.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tbell {

namespace {

void check_norm(const SubspaceState& state) {
  const double sq = state.a.squaredNorm();
  if (std::abs(sq - 1.0) > kSubspaceNormTol) {
    throw std::invalid_argument("subspace state not normalized: |a|^2 = " +
                                std::to_string(sq));
  }
}

void check_norm(const FullStateVector& state) {
  const double sq = state.a.squaredNorm();
  if (std::abs(sq - 1.0) > kFullNormTol) {
    throw std::invalid_argument("full state not normalized: |a|^2 = " +
                                std::to_string(sq));
  }
}

// Global-phase convention: first non-negligible amplitude real nonnegative.
template <typename Vec>
void fix_leading_phase(Vec& a) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double m = std::abs(a(i));
    if (m > 1e-14) {
      a *= std::conj(a(i)) / m;
      return;
    }
  }
}

}  // namespace

GroverParams GroverParams::for_size(int n) {
  if (n < 1 || n > 60) {
    throw std::invalid_argument("subspace engine supports n in [1, 60], got " +
                                std::to_string(n));
  }
  GroverParams p;
  p.n = n;
  p.sin_half = std::sqrt(std::ldexp(1.0, -n));
  p.cos_half = std::sqrt(1.0 - std::ldexp(1.0, -n));
  p.theta = 2.0 * std::asin(p.sin_half);
  p.sin_theta = 2.0 * p.sin_half * p.cos_half;
  p.cos_theta = 1.0 - std::ldexp(1.0, 1 - n);  // 1 - 2 sin^2(theta/2), exact
  return p;
}

SubspaceState subspace_initial(int n) {
  SubspaceState state;
  state.params = GroverParams::for_size(n);
  state.a(kU0) = state.params.cos_half;
  state.a(kM0) = state.params.sin_half;
  return state;
}

FullStateVector full_initial(int n, std::uint64_t marked) {
  if (n < 1 || n > 12) {
    throw std::invalid_argument("full engine supports n in [1, 12], got " +
                                std::to_string(n));
  }
  const std::uint64_t size = std::uint64_t(1) << n;
  if (marked >= size) {
    throw std::invalid_argument("marked item out of range for n=" +
                                std::to_string(n));
  }
  FullStateVector state;
  state.n = n;
  state.marked = marked;
  state.a = Eigen::VectorXcd::Zero(Eigen::Index(2 * size));
  const double amp = 1.0 / std::sqrt(double(size));
  for (std::uint64_t x = 0; x < size; ++x) {
    state.a(Eigen::Index(2 * x)) = amp;
  }
  return state;
}

SubspaceState apply_oracle(SubspaceState state) {
  check_norm(state);
  std::swap(state.a(kM0), state.a(kM1));
  return state;
}

FullStateVector apply_oracle(FullStateVector state) {
  check_norm(state);
  std::swap(state.a(Eigen::Index(2 * state.marked)),
            state.a(Eigen::Index(2 * state.marked + 1)));
  return state;
}

SubspaceState apply_output_phase(SubspaceState state) {
  check_norm(state);
  state.a(kU1) = -state.a(kU1);
  state.a(kM1) = -state.a(kM1);
  return state;
}

FullStateVector apply_output_phase(FullStateVector state) {
  check_norm(state);
  const Eigen::Index size = state.a.size() / 2;
  const auto odd = Eigen::seqN(1, size, 2);
  state.a(odd) = (-state.a(odd)).eval();
  return state;
}

SubspaceState apply_diffusion(SubspaceState state) {
  check_norm(state);
  const double p0 = std::norm(state.a(kU0)) + std::norm(state.a(kM0));
  const double p1 = std::norm(state.a(kU1)) + std::norm(state.a(kM1));
  if (p0 > kDisentangleTol && p1 > kDisentangleTol) {
    throw std::logic_error(
        "diffusion requires a disentangled output register (pure |0> or |1>)");
  }
  // Reflection about the uniform input state: angle phi -> theta - phi.
  const double c = state.params.cos_theta;
  const double s = state.params.sin_theta;
  Eigen::Matrix2cd reflect;
  reflect << c, s, s, -c;
  state.a.segment<2>(0) = (reflect * state.a.segment<2>(0)).eval();
  state.a.segment<2>(2) = (reflect * state.a.segment<2>(2)).eval();
  return state;
}

FullStateVector apply_diffusion(FullStateVector state) {
  check_norm(state);
  const Eigen::Index size = state.a.size() / 2;
  const auto even = Eigen::seqN(0, size, 2);
  const auto odd = Eigen::seqN(1, size, 2);
  const double p0 = state.a(even).squaredNorm();
  const double p1 = state.a(odd).squaredNorm();
  if (p0 > kDisentangleTol && p1 > kDisentangleTol) {
    throw std::logic_error(
        "diffusion requires a disentangled output register (pure |0> or |1>)");
  }
  // v -> 2 <v> - v on each output block.
  for (const auto& block : {even, odd}) {
    const std::complex<double> mean = state.a(block).mean();
    state.a(block) = (2.0 * mean - state.a(block).array()).matrix().eval();
  }
  return state;
}

SubspaceState grover_iteration(SubspaceState state) {
  check_norm(state);
  if (std::norm(state.a(kU1)) + std::norm(state.a(kM1)) > kDisentangleTol) {
    throw std::logic_error("grover_iteration requires the output register in |0>");
  }
  return apply_diffusion(apply_oracle(apply_output_phase(apply_oracle(std::move(state)))));
}

FullStateVector grover_iteration(FullStateVector state) {
  check_norm(state);
  const Eigen::Index size = state.a.size() / 2;
  if (state.a(Eigen::seqN(1, size, 2)).squaredNorm() > kDisentangleTol) {
    throw std::logic_error("grover_iteration requires the output register in |0>");
  }
  return apply_diffusion(apply_oracle(apply_output_phase(apply_oracle(std::move(state)))));
}

SubspaceState finish_iteration(SubspaceState state) {
  return apply_diffusion(apply_oracle(apply_output_phase(std::move(state))));
}

FullStateVector finish_iteration(FullStateVector state) {
  return apply_diffusion(apply_oracle(apply_output_phase(std::move(state))));
}

std::vector<MeasurementBranch<SubspaceState>> measure_output(const SubspaceState& state) {
  check_norm(state);
  std::vector<MeasurementBranch<SubspaceState>> branches;
  const double p[2] = {std::norm(state.a(kU0)) + std::norm(state.a(kM0)),
                       std::norm(state.a(kU1)) + std::norm(state.a(kM1))};
  for (int outcome = 0; outcome < 2; ++outcome) {
    if (p[outcome] < kBranchProbCutoff) continue;
    SubspaceState post = state;
    if (outcome == 0) {
      post.a(kU1) = 0.0;
      post.a(kM1) = 0.0;
    } else {
      post.a(kU0) = 0.0;
      post.a(kM0) = 0.0;
    }
    post.a /= std::sqrt(p[outcome]);
    fix_leading_phase(post.a);
    branches.push_back({outcome, p[outcome], std::move(post)});
  }
  return branches;
}

std::vector<MeasurementBranch<FullStateVector>> measure_output(const FullStateVector& state) {
  check_norm(state);
  const Eigen::Index size = state.a.size() / 2;
  std::vector<MeasurementBranch<FullStateVector>> branches;
  for (int outcome = 0; outcome < 2; ++outcome) {
    const auto keep = Eigen::seqN(outcome, size, 2);
    const auto drop = Eigen::seqN(1 - outcome, size, 2);
    const double p = state.a(keep).squaredNorm();
    if (p < kBranchProbCutoff) continue;
    FullStateVector post = state;
    post.a(drop).setZero();
    post.a /= std::sqrt(p);
    fix_leading_phase(post.a);
    branches.push_back({outcome, p, std::move(post)});
  }
  return branches;
}

double success_probability(const SubspaceState& state) {
  return std::norm(state.a(kM0)) + std::norm(state.a(kM1));
}

double success_probability(const FullStateVector& state) {
  return std::norm(state.a(Eigen::Index(2 * state.marked))) +
         std::norm(state.a(Eigen::Index(2 * state.marked + 1)));
}

SubspaceRun run_unmeasured(int n, std::uint64_t iterations) {
  SubspaceState state = subspace_initial(n);
  for (std::uint64_t j = 0; j < iterations; ++j) {
    state = grover_iteration(std::move(state));
  }
  const double p = success_probability(state);
  return {std::move(state), p};
}

FullRun run_unmeasured_full(int n, std::uint64_t iterations, std::uint64_t marked) {
  FullStateVector state = full_initial(n, marked);
  for (std::uint64_t j = 0; j < iterations; ++j) {
    state = grover_iteration(std::move(state));
  }
  const double p = success_probability(state);
  return {std::move(state), p};
}

Script measured_pair_script(int k) {
  if (k < 0) {
    throw std::invalid_argument("pair index k must be nonnegative");
  }
  Script script;
  if (k == 0) {
    script = {ScriptOp::oracle, ScriptOp::measure_output};
    return script;
  }
  for (int j = 0; j < k - 1; ++j) {
    script.push_back(ScriptOp::iteration);
  }
  script.insert(script.end(), {ScriptOp::oracle, ScriptOp::measure_output,
                               ScriptOp::finish_iteration, ScriptOp::oracle,
                               ScriptOp::measure_output});
  return script;
}

namespace {

template <typename State>
void walk_script(const State& state, const Script& script, std::size_t pos,
                 double prob, std::vector<int>& outcomes, OutcomeDistribution& out) {
  if (pos == script.size()) {
    out[outcomes] += prob;
    return;
  }
  switch (script[pos]) {
    case ScriptOp::oracle:
      walk_script(apply_oracle(state), script, pos + 1, prob, outcomes, out);
      return;
    case ScriptOp::output_phase:
      walk_script(apply_output_phase(state), script, pos + 1, prob, outcomes, out);
      return;
    case ScriptOp::diffusion:
      walk_script(apply_diffusion(state), script, pos + 1, prob, outcomes, out);
      return;
    case ScriptOp::iteration:
      walk_script(grover_iteration(state), script, pos + 1, prob, outcomes, out);
      return;
    case ScriptOp::finish_iteration:
      walk_script(finish_iteration(state), script, pos + 1, prob, outcomes, out);
      return;
    case ScriptOp::measure_output:
      for (const auto& branch : measure_output(state)) {
        outcomes.push_back(branch.outcome);
        walk_script(branch.post_state, script, pos + 1, prob * branch.probability,
                    outcomes, out);
        outcomes.pop_back();
      }
      return;
  }
}

}  // namespace

OutcomeDistribution run_script(const SubspaceState& initial, const Script& script) {
  OutcomeDistribution out;
  std::vector<int> outcomes;
  walk_script(initial, script, 0, 1.0, outcomes, out);
  return out;
}

OutcomeDistribution run_script(const FullStateVector& initial, const Script& script) {
  OutcomeDistribution out;
  std::vector<int> outcomes;
  walk_script(initial, script, 0, 1.0, outcomes, out);
  return out;
}

double total_variation(const OutcomeDistribution& p, const OutcomeDistribution& q) {
  double dist = 0.0;
  for (const auto& [key, value] : p) {
    const auto it = q.find(key);
    dist += std::abs(value - (it == q.end() ? 0.0 : it->second));
  }
  for (const auto& [key, value] : q) {
    if (p.find(key) == p.end()) {
      dist += value;
    }
  }
  return 0.5 * dist;
}

double engine_pair_check(int n, const Script& script, std::uint64_t marked) {
  const OutcomeDistribution sub = run_script(subspace_initial(n), script);
  const OutcomeDistribution full = run_script(full_initial(n, marked), script);
  return total_variation(sub, full);
}

}  // namespace tbell
