#include "tbell/validate.hpp"

#include "tbell/classical.hpp"
#include "tbell/entropy.hpp"
#include "tbell/experiment.hpp"
#include "tbell/rng.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tbell {

namespace {

constexpr int kRandomCases = 1000;

Eigen::VectorXd random_distribution(SplitMix64& rng, int outcomes) {
  Eigen::VectorXd w(outcomes);
  for (int i = 0; i < outcomes; ++i) {
    // Exponential weights give a Dirichlet(1,..,1) sample after
    // normalization; an occasional hard zero exercises the 0 log 0 branch.
    const double u = rng.next_double();
    w(i) = rng.next_double() < 0.05 ? 0.0 : -std::log(1.0 - u);
  }
  if (w.sum() == 0.0) w(0) = 1.0;
  w /= w.sum();
  return w;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(15);
  os << x;
  return os.str();
}

CheckResult entropy_identities(const ValidateOptions& options) {
  CheckResult result{"entropy-identities", true, 0, ""};
  SplitMix64 rng = SplitMix64::stream(options.seed, 0xE27);
  for (int c = 0; c < kRandomCases; ++c) {
    ++result.cases;
    const int m = 2 + int(rng.next() % 7);
    const Eigen::VectorXd dist = random_distribution(rng, m);
    const double h = shannon_entropy(dist);
    if (h < -kEntropyIdentityTol || h > std::log2(double(m)) + kEntropyIdentityTol) {
      result.passed = false;
      result.detail = "entropy out of [0, log2 m]: H=" + fmt(h) + " m=" + fmt(m);
      return result;
    }

    const double x = rng.next_double();
    const Eigen::Vector2d pair(x, 1.0 - x);
    if (std::abs(binary_entropy(x) - shannon_entropy(pair)) > kEntropyIdentityTol) {
      result.passed = false;
      result.detail = "binary_entropy mismatch at x=" + fmt(x);
      return result;
    }

    Eigen::MatrixXd joint = random_distribution(rng, 4).reshaped(2, 2);
    const double chain = shannon_entropy(Eigen::Vector2d(joint.row(0).sum(),
                                                          joint.row(1).sum())) +
                         conditional_entropy(joint) -
                         joint_entropy(joint);
    if (std::abs(chain) > kEntropyIdentityTol) {
      result.passed = false;
      result.detail = "chain rule residual " + fmt(chain);
      return result;
    }
    const double h_col = shannon_entropy(
        Eigen::Vector2d(joint.col(0).sum(), joint.col(1).sum()));
    if (conditional_entropy(joint) > h_col + kEntropyIdentityTol) {
      result.passed = false;
      result.detail = "conditioning increased entropy: H(Y|X)=" +
                      fmt(conditional_entropy(joint)) + " H(Y)=" + fmt(h_col);
      return result;
    }
  }
  return result;
}

CheckResult chain_bound(const ValidateOptions& options) {
  CheckResult result{"chain-bound", true, 0, ""};
  SplitMix64 rng = SplitMix64::stream(options.seed, 0xC4A);
  for (int c = 0; c < kRandomCases; ++c) {
    ++result.cases;
    const Eigen::VectorXd full = random_distribution(rng, 16);  // 4 binary vars
    const auto check = chain_bound_check(full);
    if (!check.holds) {
      result.passed = false;
      result.detail = "lhs=" + fmt(check.lhs) + " rhs=" + fmt(check.rhs);
      return result;
    }
  }
  return result;
}

SubspaceState random_subspace_state(SplitMix64& rng) {
  SubspaceState state;
  state.params = GroverParams::for_size(3 + int(rng.next() % 8));
  for (int i = 0; i < 4; ++i) {
    state.a(i) = std::complex<double>(rng.next_double() - 0.5,
                                      rng.next_double() - 0.5);
  }
  state.a.normalize();
  return state;
}

CheckResult engine_involutions(const ValidateOptions& options) {
  CheckResult result{"engine-involutions", true, 0, ""};
  SplitMix64 rng = SplitMix64::stream(options.seed, 0x1F0);
  for (int c = 0; c < 200; ++c) {
    ++result.cases;
    const SubspaceState state = random_subspace_state(rng);
    const SubspaceState twice_oracle = apply_oracle(apply_oracle(state));
    const SubspaceState twice_phase =
        apply_output_phase(apply_output_phase(state));
    if ((twice_oracle.a - state.a).norm() > 1e-12 ||
        (twice_phase.a - state.a).norm() > 1e-12) {
      result.passed = false;
      result.detail = "involution failed on a random state (case " +
                      std::to_string(c) + ")";
      return result;
    }
    if (std::abs(apply_oracle(state).a.squaredNorm() - 1.0) > 1e-12) {
      result.passed = false;
      result.detail = "oracle broke normalization (case " + std::to_string(c) + ")";
      return result;
    }
  }
  return result;
}

SubspaceState hooked_iteration(const ValidateOptions& options, SubspaceState state) {
  state = apply_oracle(apply_output_phase(apply_oracle(std::move(state))));
  if (options.subspace_diffusion) {
    return options.subspace_diffusion(std::move(state));
  }
  return apply_diffusion(std::move(state));
}

CheckResult rotation_law(const ValidateOptions& options) {
  CheckResult result{"rotation-law", true, 0, ""};
  for (int n = 3; n <= std::min(options.n_max, 12); ++n) {
    const GroverParams params = GroverParams::for_size(n);
    const std::uint64_t steps = ceil_sqrt_pow2(n);
    SubspaceState state = subspace_initial(n);
    for (std::uint64_t j = 0; j <= steps; ++j) {
      ++result.cases;
      const double phi = params.theta / 2.0 + double(j) * params.theta;
      if (std::abs(state.a(kU0).real() - std::cos(phi)) > 1e-12 ||
          std::abs(state.a(kM0).real() - std::sin(phi)) > 1e-12) {
        result.passed = false;
        result.detail = "n=" + std::to_string(n) + " j=" + std::to_string(j) +
                        ": amplitudes (" + fmt(state.a(kU0).real()) + ", " +
                        fmt(state.a(kM0).real()) + ") expected angle " + fmt(phi);
        return result;
      }
      if (j < steps) state = hooked_iteration(options, std::move(state));
    }

    // Full engine agrees with the same angles within 1e-10.
    if (n <= std::min(options.n_max, 10)) {
      FullStateVector full = full_initial(n);
      const std::uint64_t root = std::uint64_t(1) << n;
      for (std::uint64_t j = 0; j <= std::min<std::uint64_t>(steps, 8); ++j) {
        ++result.cases;
        const double phi = params.theta / 2.0 + double(j) * params.theta;
        std::complex<double> u_amp = 0.0;
        for (std::uint64_t x = 0; x < root; ++x) {
          if (x != full.marked) u_amp += full.a(Eigen::Index(2 * x));
        }
        u_amp /= std::sqrt(double(root - 1));
        const std::complex<double> m_amp = full.a(Eigen::Index(2 * full.marked));
        if (std::abs(u_amp - std::complex<double>(std::cos(phi), 0)) > 1e-10 ||
            std::abs(m_amp - std::complex<double>(std::sin(phi), 0)) > 1e-10) {
          result.passed = false;
          result.detail = "full engine n=" + std::to_string(n) +
                          " j=" + std::to_string(j) + " deviates from angle " +
                          fmt(phi);
          return result;
        }
        if (j < steps) full = grover_iteration(std::move(full));
      }
    }
  }
  return result;
}

CheckResult disentanglement(const ValidateOptions& options) {
  CheckResult result{"disentanglement", true, 0, ""};
  for (int n = 3; n <= std::min(options.n_max, 12); ++n) {
    SubspaceState state = subspace_initial(n);
    const std::uint64_t steps = ceil_sqrt_pow2(n);
    for (std::uint64_t j = 0; j < steps; ++j) {
      ++result.cases;
      state = hooked_iteration(options, std::move(state));
      const double leak =
          std::sqrt(std::norm(state.a(kU1)) + std::norm(state.a(kM1)));
      if (leak >= 1e-12) {
        result.passed = false;
        result.detail = "n=" + std::to_string(n) + " iteration " +
                        std::to_string(j + 1) + ": output-1 amplitude " + fmt(leak);
        return result;
      }
    }
  }
  return result;
}

CheckResult engine_equivalence(const ValidateOptions& options) {
  CheckResult result{"engine-equivalence", true, 0, ""};
  for (int n = 3; n <= std::min(options.n_max, 10); ++n) {
    const std::uint64_t k_max = ceil_sqrt_pow2(n);
    for (std::uint64_t k = 0; k <= k_max; ++k) {
      ++result.cases;
      const double tv = engine_pair_check(n, measured_pair_script(int(k)));
      if (tv > 1e-10) {
        result.passed = false;
        result.detail = "n=" + std::to_string(n) + " k=" + std::to_string(k) +
                        ": total variation " + fmt(tv);
        return result;
      }
    }
  }
  return result;
}

CheckResult exact_vs_analytic(const ValidateOptions& options) {
  CheckResult result{"exact-vs-analytic", true, 0, ""};
  for (int n = 3; n <= std::min(options.n_max, 12); ++n) {
    const std::uint64_t k_max = ceil_sqrt_pow2(n);
    for (std::uint64_t k = 0; k <= k_max; ++k) {
      ++result.cases;
      const double exact =
          conditional_entropy(exact_pair_distribution(n, int(k)).joint);
      const double analytic = analytic_pair_conditional_entropy(n, int(k));
      if (std::abs(exact - analytic) > 1e-12) {
        result.passed = false;
        result.detail = "n=" + std::to_string(n) + " k=" + std::to_string(k) +
                        ": exact " + fmt(exact) + " vs closed form " + fmt(analytic);
        return result;
      }
    }
  }
  return result;
}

CheckResult classical_satisfaction(const ValidateOptions& options) {
  CheckResult result{"classical-satisfaction", true, 0, ""};
  for (int n = 1; n <= std::min(options.n_max, 12); ++n) {
    ++result.cases;
    const QuerySchedule schedule = sequential_schedule(n);
    const double rhs = classical_rhs_sum(schedule);
    const double joint = classical_full_joint_entropy(schedule);
    if (rhs < double(n) - 1e-9) {
      result.passed = false;
      result.detail = "n=" + std::to_string(n) + ": rhs " + fmt(rhs) + " < n";
      return result;
    }
    if (std::abs(joint - double(n)) > 1e-9) {
      result.passed = false;
      result.detail = "n=" + std::to_string(n) + ": full joint entropy " +
                      fmt(joint) + " != n";
      return result;
    }
  }
  return result;
}

CheckResult quantum_violation(const ValidateOptions&) {
  CheckResult result{"quantum-violation", true, 0, ""};
  for (int n = 3; n <= 60; ++n) {
    ++result.cases;
    const double rhs = quantum_rhs_sum(n, ceil_sqrt_pow2(n));
    if (!(rhs < double(n))) {
      result.passed = false;
      result.detail = "n=" + std::to_string(n) + ": rhs " + fmt(rhs) + " >= n";
      return result;
    }
  }
  return result;
}

CheckResult bound_chain(const ValidateOptions&) {
  CheckResult result{"bound-chain", true, 0, ""};
  for (int n = 3; n <= 60; ++n) {
    ++result.cases;
    const double rhs = quantum_rhs_sum_real(n, std::sqrt(std::ldexp(1.0, n)));
    const double bound = paper_bound(n);
    if (!(rhs < bound)) {
      result.passed = false;
      result.detail = "n=" + std::to_string(n) + ": rhs " + fmt(rhs) +
                      " not below bound " + fmt(bound);
      return result;
    }
  }
  return result;
}

CheckResult halt_variant_dominance(const ValidateOptions& options) {
  CheckResult result{"halt-variant-dominance", true, 0, ""};
  for (int n = 3; n <= std::min(options.n_max, 12); ++n) {
    const std::uint64_t k_max = ceil_sqrt_pow2(n);
    for (std::uint64_t k = 1; k <= k_max; ++k) {
      ++result.cases;
      const PairDistribution standard = exact_pair_distribution(n, int(k));
      const PairDistribution halted =
          exact_pair_distribution(n, int(k), Variant::halt_on_hit);
      const double h_std = conditional_entropy(standard.joint);
      const double h_halt = conditional_entropy(halted.joint);
      const double p_hit = standard.joint.row(1).sum();
      if (h_halt > h_std + 1e-12 || (p_hit > 1e-12 && !(h_halt < h_std))) {
        result.passed = false;
        result.detail = "n=" + std::to_string(n) + " k=" + std::to_string(k) +
                        ": halted " + fmt(h_halt) + " vs standard " + fmt(h_std);
        return result;
      }
    }
  }
  return result;
}

}  // namespace

std::vector<CheckResult> run_validation(const ValidateOptions& options) {
  std::vector<CheckResult> results;
  results.push_back(entropy_identities(options));
  results.push_back(chain_bound(options));
  results.push_back(engine_involutions(options));
  results.push_back(rotation_law(options));
  results.push_back(disentanglement(options));
  results.push_back(engine_equivalence(options));
  results.push_back(exact_vs_analytic(options));
  results.push_back(classical_satisfaction(options));
  results.push_back(quantum_violation(options));
  results.push_back(bound_chain(options));
  results.push_back(halt_variant_dominance(options));
  return results;
}

}  // namespace tbell
