#include "tbell/experiment.hpp"

#include "tbell/entropy.hpp"
#include "tbell/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tbell {

namespace {

constexpr double kViolationTol = 1e-9;
constexpr std::uint64_t kMaxExactIterations = 8192;   // exact enumeration is O(L^2)
constexpr std::uint64_t kMaxSamples = std::uint64_t(1) << 31;
constexpr std::uint64_t kMaxSampledCost = std::uint64_t(1) << 31;  // samples * L
constexpr int kBootstrapResamples = 200;

void check_quantum_n(int n) {
  if (n < 1 || n > 60) {
    throw std::invalid_argument("quantum pair experiments support n in [1, 60]");
  }
}

// Measurement right after an oracle call leaves at most two branches; draw
// one with the copy's own uniform variate.
MeasurementBranch<SubspaceState> draw_branch(
    const std::vector<MeasurementBranch<SubspaceState>>& branches, double u) {
  double cumulative = 0.0;
  for (const auto& branch : branches) {
    cumulative += branch.probability;
    if (u < cumulative) {
      return branch;
    }
  }
  return branches.back();
}

double plugin_conditional_entropy(const Eigen::Matrix2d& joint) {
  return conditional_entropy(joint);
}

}  // namespace

std::uint64_t ceil_sqrt_pow2(int n) {
  check_quantum_n(n);
  const std::uint64_t size = std::uint64_t(1) << n;
  std::uint64_t r = std::uint64_t(std::sqrt(double(size)));
  while (r > 0 && r * r > size) --r;
  while ((r + 1) * (r + 1) <= size) ++r;
  return r * r == size ? r : r + 1;
}

std::uint64_t grover_optimal_iterations(int n) {
  check_quantum_n(n);
  const double l = std::numbers::pi / 4.0 * std::sqrt(std::ldexp(1.0, n));
  return std::uint64_t(std::llround(l));
}

double closed_form_success_probability(int n, std::uint64_t L) {
  const GroverParams params = GroverParams::for_size(n);
  const double angle = (2.0 * double(L) + 1.0) * params.theta / 2.0;
  const double s = std::sin(angle);
  return s * s;
}

std::uint64_t ExperimentConfig::iterations() const {
  return L == 0 ? ceil_sqrt_pow2(n) : L;
}

void ExperimentConfig::validate() const {
  if (n < 3 || n > 60) {
    throw std::invalid_argument("experiment requires n in [3, 60], got " +
                                std::to_string(n));
  }
  if (samples < 1) {
    throw std::invalid_argument("samples must be at least 1");
  }
  const std::uint64_t iters = iterations();
  if (iters < 1) {
    throw std::invalid_argument("iteration budget L must be at least 1");
  }
  if (mode == Mode::exact && iters > kMaxExactIterations) {
    throw std::invalid_argument(
        "exact mode supports L <= " + std::to_string(kMaxExactIterations) +
        " (cost grows as L^2); got L=" + std::to_string(iters));
  }
  if (mode == Mode::monte_carlo) {
    if (samples > kMaxSamples) {
      throw std::invalid_argument("samples exceeds " + std::to_string(kMaxSamples));
    }
    if (samples * iters > kMaxSampledCost) {
      throw std::invalid_argument(
          "samples * L exceeds the sampling budget of " +
          std::to_string(kMaxSampledCost));
    }
  }
}

PairDistribution exact_pair_distribution(int n, int k, Variant variant) {
  check_quantum_n(n);
  if (k < 0 || std::uint64_t(k) > kMaxExactIterations) {
    throw std::invalid_argument("pair index k out of range: " + std::to_string(k));
  }
  PairDistribution pd;
  pd.n = n;
  pd.k = k;
  pd.variant = variant;
  pd.source = PairSource::exact_branch;

  SubspaceState state = subspace_initial(n);
  if (k == 0) {
    // A_0 is the constant 0; A_1 is measured after the very first oracle call.
    state = apply_oracle(std::move(state));
    for (const auto& branch : measure_output(state)) {
      pd.joint(0, branch.outcome) += branch.probability;
    }
    return pd;
  }

  for (int j = 1; j < k; ++j) {
    state = grover_iteration(std::move(state));
  }
  state = apply_oracle(std::move(state));
  for (const auto& first : measure_output(state)) {
    if (variant == Variant::halt_on_hit && first.outcome == 1) {
      // Found: the remaining dynamics is trivial and keeps the output at 0.
      pd.joint(1, 0) += first.probability;
      continue;
    }
    SubspaceState continued = finish_iteration(first.post_state);
    continued = apply_oracle(std::move(continued));
    for (const auto& second : measure_output(continued)) {
      pd.joint(first.outcome, second.outcome) +=
          first.probability * second.probability;
    }
  }
  return pd;
}

double analytic_pair_conditional_entropy(int n, int k) {
  check_quantum_n(n);
  if (k < 0) {
    throw std::invalid_argument("pair index k must be nonnegative");
  }
  const GroverParams params = GroverParams::for_size(n);
  // H(cos^2 x) = H(sin^2 x); the sin^2 forms avoid cancellation at large n.
  return k == 0 ? binary_entropy(params.sin_sq_half())
                : binary_entropy(params.sin_sq_theta());
}

double quantum_rhs_sum(int n, std::uint64_t L, RhsMethod method, Variant variant,
                       std::uint64_t samples, std::uint64_t seed) {
  check_quantum_n(n);
  if (L < 1) {
    throw std::invalid_argument("rhs sum requires L >= 1");
  }
  switch (method) {
    case RhsMethod::analytic:
      return analytic_pair_conditional_entropy(n, 0) +
             double(L - 1) * analytic_pair_conditional_entropy(n, 1);
    case RhsMethod::exact: {
      if (L > kMaxExactIterations) {
        throw std::invalid_argument("exact rhs sum supports L <= " +
                                    std::to_string(kMaxExactIterations));
      }
      double sum = 0.0;
      for (std::uint64_t k = 0; k < L; ++k) {
        sum += plugin_conditional_entropy(
            exact_pair_distribution(n, int(k), variant).joint);
      }
      return sum;
    }
    case RhsMethod::monte_carlo: {
      ExperimentConfig cfg;
      cfg.n = n;
      cfg.L = L;
      cfg.mode = Mode::monte_carlo;
      cfg.samples = samples;
      cfg.seed = seed;
      cfg.variant = variant;
      cfg.validate();
      double sum = 0.0;
      for (std::uint64_t k = 0; k < L; ++k) {
        sum += plugin_conditional_entropy(sample_pairs(cfg, int(k)).joint);
      }
      return sum;
    }
  }
  throw std::logic_error("unreachable");
}

double quantum_rhs_sum_real(int n, double L_real) {
  check_quantum_n(n);
  if (L_real < 1.0) {
    throw std::invalid_argument("rhs sum requires L >= 1");
  }
  return analytic_pair_conditional_entropy(n, 0) +
         (L_real - 1.0) * analytic_pair_conditional_entropy(n, 1);
}

double paper_bound(int n) {
  if (n < 3) {
    throw std::invalid_argument(
        "the analytic bound requires n >= 3 (it uses sin^2 theta <= 1/2)");
  }
  const double root = std::sqrt(std::ldexp(1.0, n));
  return (root - 1.0) * double(n - 2) / std::ldexp(1.0, n - 3) + 1.0;
}

PairDistribution sample_pairs(const ExperimentConfig& config, int k) {
  if (config.mode != Mode::monte_carlo) {
    throw std::invalid_argument("sample_pairs requires monte_carlo mode");
  }
  config.validate();
  if (k < 0 || std::uint64_t(k) > kMaxExactIterations) {
    throw std::invalid_argument("pair index k out of range: " + std::to_string(k));
  }

  // The unmeasured prefix is deterministic, so the branch structure is
  // computed once; each copy then spends its own random variates on the
  // one or two measurements it performs.
  SubspaceState state = subspace_initial(config.n);
  for (int j = 1; j < k; ++j) {
    state = grover_iteration(std::move(state));
  }
  state = apply_oracle(std::move(state));
  const auto first_branches = measure_output(state);

  // Second-measurement branch sets, keyed by the first outcome.
  std::vector<std::vector<MeasurementBranch<SubspaceState>>> second_branches(2);
  for (const auto& first : first_branches) {
    if (k == 0) break;  // pair (A_0, A_1): only one real measurement
    if (config.variant == Variant::halt_on_hit && first.outcome == 1) continue;
    SubspaceState continued = finish_iteration(first.post_state);
    continued = apply_oracle(std::move(continued));
    second_branches[first.outcome] = measure_output(continued);
  }

  std::uint64_t counts[2][2] = {{0, 0}, {0, 0}};
  const std::uint64_t stream_base = std::uint64_t(k) << 33;
  for (std::uint64_t copy = 0; copy < config.samples; ++copy) {
    SplitMix64 rng = SplitMix64::stream(config.seed, stream_base + copy);
    int a = 0;
    int b = 0;
    if (k == 0) {
      b = draw_branch(first_branches, rng.next_double()).outcome;
    } else {
      a = draw_branch(first_branches, rng.next_double()).outcome;
      if (config.variant == Variant::halt_on_hit && a == 1) {
        b = 0;
      } else {
        b = draw_branch(second_branches[a], rng.next_double()).outcome;
      }
    }
    counts[a][b] += 1;
  }

  PairDistribution pd;
  pd.n = config.n;
  pd.k = k;
  pd.variant = config.variant;
  pd.source = PairSource::sampled;
  pd.samples = config.samples;
  pd.joint << double(counts[0][0]), double(counts[0][1]), double(counts[1][0]),
      double(counts[1][1]);
  pd.joint /= double(config.samples);

  if (config.samples >= 2) {
    // Plug-in bootstrap: resample the empirical joint with replacement.
    const double p[4] = {pd.joint(0, 0), pd.joint(0, 1), pd.joint(1, 0),
                         pd.joint(1, 1)};
    double mean = 0.0;
    double sq_mean = 0.0;
    const std::uint64_t bootstrap_base = stream_base + (std::uint64_t(1) << 32);
    for (int r = 0; r < kBootstrapResamples; ++r) {
      SplitMix64 rng = SplitMix64::stream(config.seed, bootstrap_base + r);
      std::uint64_t c[4] = {0, 0, 0, 0};
      for (std::uint64_t i = 0; i < config.samples; ++i) {
        const double u = rng.next_double();
        if (u < p[0]) ++c[0];
        else if (u < p[0] + p[1]) ++c[1];
        else if (u < p[0] + p[1] + p[2]) ++c[2];
        else ++c[3];
      }
      Eigen::Matrix2d resampled;
      resampled << double(c[0]), double(c[1]), double(c[2]), double(c[3]);
      resampled /= double(config.samples);
      const double h = plugin_conditional_entropy(resampled);
      mean += h;
      sq_mean += h * h;
    }
    mean /= kBootstrapResamples;
    sq_mean /= kBootstrapResamples;
    const double var = std::max(0.0, sq_mean - mean * mean) *
                       double(kBootstrapResamples) / double(kBootstrapResamples - 1);
    pd.stderr_bits = std::sqrt(var);
    pd.stderr_reliable = true;
  }
  return pd;
}

Verdict check_violation(double information_target, double rhs) {
  return {rhs < information_target - kViolationTol, information_target - rhs};
}

InequalityReport evaluate_inequality(double information_target, double rhs,
                                     ReportContext context) {
  if (information_target < 0.0) {
    throw std::invalid_argument("information target must be nonnegative");
  }
  InequalityReport report;
  report.n = context.n;
  report.L = context.L;
  report.policy = std::move(context.policy);
  report.information_target = information_target;
  report.per_step = std::move(context.per_step);
  report.rhs_sum = rhs;
  const Verdict verdict = check_violation(information_target, rhs);
  report.violated = verdict.violated;
  report.margin = verdict.margin;
  if (context.n >= 3) {
    report.paper_bound = paper_bound(context.n);
  }
  report.success_probability = context.success_probability;
  report.full_joint_entropy = context.full_joint_entropy;
  return report;
}

InequalityReport make_quantum_report(const ExperimentConfig& config,
                                     std::string policy) {
  config.validate();
  const std::uint64_t L = config.iterations();
  std::vector<double> per_step;
  per_step.reserve(L);
  double rhs = 0.0;
  for (std::uint64_t k = 0; k < L; ++k) {
    double h = 0.0;
    if (config.mode == Mode::exact) {
      h = plugin_conditional_entropy(
          exact_pair_distribution(config.n, int(k), config.variant).joint);
    } else {
      h = plugin_conditional_entropy(sample_pairs(config, int(k)).joint);
    }
    per_step.push_back(h);
    rhs += h;
  }

  ReportContext ctx;
  ctx.n = config.n;
  ctx.L = L;
  ctx.policy = policy.empty()
                   ? (config.L == 0 ? std::string("ceil-sqrt") : std::string("fixed-L"))
                   : std::move(policy);
  ctx.per_step = std::move(per_step);
  ctx.success_probability = closed_form_success_probability(config.n, L);
  return evaluate_inequality(double(config.n), rhs, std::move(ctx));
}

InequalityReport make_classical_report(const QuerySchedule& schedule) {
  schedule.validate();
  const std::uint64_t cost =
      std::uint64_t(schedule.length()) * (std::uint64_t(1) << schedule.n);
  if (cost > (std::uint64_t(1) << 28)) {
    throw std::invalid_argument(
        "schedule enumeration cost L * 2^n exceeds the budget of 2^28");
  }
  std::vector<double> per_step;
  per_step.reserve(schedule.length());
  double rhs = 0.0;
  for (std::size_t k = 0; k < schedule.length(); ++k) {
    const double h =
        plugin_conditional_entropy(classical_pair_joint(schedule, int(k)));
    per_step.push_back(h);
    rhs += h;
  }

  ReportContext ctx;
  ctx.n = schedule.n;
  ctx.L = schedule.length();
  ctx.policy = "classical";
  ctx.per_step = std::move(per_step);
  ctx.success_probability = schedule_success_probability(schedule);
  ctx.full_joint_entropy = classical_full_joint_entropy(schedule);
  return evaluate_inequality(double(schedule.n), rhs, std::move(ctx));
}

std::vector<InequalityReport> sweep(const SweepOptions& options) {
  if (options.n_min < 3 || options.n_max > 60 || options.n_min > options.n_max) {
    throw std::invalid_argument("sweep requires 3 <= n_min <= n_max <= 60");
  }
  std::vector<InequalityReport> reports;
  for (int n = options.n_min; n <= options.n_max; ++n) {
    const std::uint64_t L = options.policy == SweepPolicy::ceil_sqrt
                                ? ceil_sqrt_pow2(n)
                                : grover_optimal_iterations(n);
    const double rhs = quantum_rhs_sum(n, L, RhsMethod::analytic);

    ReportContext ctx;
    ctx.n = n;
    ctx.L = L;
    ctx.policy = options.policy == SweepPolicy::ceil_sqrt ? "ceil-sqrt"
                                                          : "grover-optimal";
    if (L <= 256) {
      ctx.per_step.reserve(L);
      for (std::uint64_t k = 0; k < L; ++k) {
        ctx.per_step.push_back(analytic_pair_conditional_entropy(n, int(k)));
      }
    }
    ctx.success_probability = closed_form_success_probability(n, L);
    reports.push_back(evaluate_inequality(double(n), rhs, std::move(ctx)));

    if (options.classical_baseline && n <= 12) {
      InequalityReport baseline = make_classical_report(sequential_schedule(n));
      // Sweep rows keep the pinned sweep schema; the full joint entropy is
      // a run-classical payload field.
      baseline.full_joint_entropy.reset();
      reports.push_back(std::move(baseline));
    }
  }
  return reports;
}

}  // namespace tbell
