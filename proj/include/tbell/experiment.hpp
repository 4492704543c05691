#pragma once

// The measured-pair experiment: exact and Monte-Carlo estimates of the
// successive-pair conditional entropies H(A_{k+1}|A_k) across Grover
// iterations, assembly of the temporal Bell inequality
//
//     I <= H(A_L|A_{L-1}) + ... + H(A_1|A_0),
//
// and the analytic bound on its right-hand side at L = sqrt(2^n).
//
// Indexing convention: iteration k = 1 is the first Grover iteration, A_k
// is the output measurement after its first oracle call, and A_0 is the
// constant-0 pseudo-observable.

#include "tbell/classical.hpp"
#include "tbell/grover.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tbell {

// In the halt-on-hit variant the dynamics after a 1 outcome (the marked
// item was found) is replaced by the trivial evolution that keeps the
// output register at 0.
enum class Variant { standard, halt_on_hit };
enum class Mode { exact, monte_carlo };
enum class RhsMethod { analytic, exact, monte_carlo };
enum class SweepPolicy { ceil_sqrt, grover_optimal };
enum class PairSource { exact_branch, sampled };

// Exact ceil(sqrt(2^n)), integer-verified.
std::uint64_t ceil_sqrt_pow2(int n);
// round((pi/4) sqrt(2^n)), the standard optimal iteration count.
std::uint64_t grover_optimal_iterations(int n);
// sin^2((2L+1) theta/2): success probability of L unmeasured iterations.
double closed_form_success_probability(int n, std::uint64_t L);

struct ExperimentConfig {
  int n = 4;
  std::uint64_t L = 0;  // 0 selects the default ceil(sqrt(2^n))
  Mode mode = Mode::exact;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  Variant variant = Variant::standard;

  std::uint64_t iterations() const;
  void validate() const;
};

struct PairDistribution {
  int n = 0;
  int k = 0;
  Variant variant = Variant::standard;
  PairSource source = PairSource::exact_branch;
  Eigen::Matrix2d joint = Eigen::Matrix2d::Zero();  // rows = A_k, cols = A_{k+1}
  std::uint64_t samples = 0;                        // sampled source only
  std::optional<double> stderr_bits;                // bootstrap standard error
  bool stderr_reliable = false;
};

// Exact joint of (A_k, A_{k+1}) by branch enumeration on the subspace
// engine; k = 0 pairs the constant A_0 with A_1.
PairDistribution exact_pair_distribution(int n, int k,
                                         Variant variant = Variant::standard);

// Closed forms H(cos^2(theta/2)) for k = 0 and H(cos^2 theta) for k >= 1,
// evaluated via the cancellation-free sin^2 expressions.
double analytic_pair_conditional_entropy(int n, int k);

// Sum of H(A_{k+1}|A_k) over k = 0..L-1. The analytic method evaluates
// H(cos^2(theta/2)) + (L-1) H(cos^2 theta); exact and monte_carlo build
// each term from a PairDistribution.
double quantum_rhs_sum(int n, std::uint64_t L,
                       RhsMethod method = RhsMethod::analytic,
                       Variant variant = Variant::standard,
                       std::uint64_t samples = 100000, std::uint64_t seed = 1);

// Same sum with a real-valued iteration count, as used by the analytic
// bound chain at L = sqrt(2^n).
double quantum_rhs_sum_real(int n, double L_real);

// (sqrt(2^n) - 1)(n - 2)/2^(n-3) + 1, the analytic upper bound on the
// right-hand side at L = sqrt(2^n). Defined for n >= 3.
double paper_bound(int n);

// M independent sampled runs, each measuring only (A_k, A_{k+1}). Every
// copy draws from its own SplitMix64 stream derived from (seed, k, copy),
// so identical seeds reproduce byte-identically. The bootstrap standard
// error uses 200 resamples; it is omitted (and flagged unreliable) when
// fewer than two samples were taken.
PairDistribution sample_pairs(const ExperimentConfig& config, int k);

struct InequalityReport {
  int n = 0;
  std::uint64_t L = 0;
  std::string policy;                       // ceil-sqrt | grover-optimal | fixed-L | classical
  double information_target = 0.0;          // I, in bits
  std::vector<double> per_step;             // H(A_{k+1}|A_k), k = 0..L-1
  double rhs_sum = 0.0;
  bool violated = false;                    // rhs_sum < I - 1e-9
  double margin = 0.0;                      // I - rhs_sum
  std::optional<double> paper_bound;        // defined for n >= 3
  double success_probability = 0.0;
  std::optional<double> full_joint_entropy; // classical runs only
};

struct Verdict {
  bool violated = false;
  double margin = 0.0;
};
Verdict check_violation(double information_target, double rhs);

struct ReportContext {
  int n = 0;
  std::uint64_t L = 0;
  std::string policy;
  std::vector<double> per_step;
  double success_probability = 0.0;
  std::optional<double> full_joint_entropy;
};
InequalityReport evaluate_inequality(double information_target, double rhs,
                                     ReportContext context);

// Full quantum report for the configured run; information target is n bits.
InequalityReport make_quantum_report(const ExperimentConfig& config,
                                     std::string policy = "");

// Classical report for a deterministic schedule; cost is L * 2^n, guarded.
InequalityReport make_classical_report(const QuerySchedule& schedule);

struct SweepOptions {
  int n_min = 3;
  int n_max = 12;
  SweepPolicy policy = SweepPolicy::ceil_sqrt;
  bool classical_baseline = true;  // sequential-schedule rows for n <= 12
};
std::vector<InequalityReport> sweep(const SweepOptions& options);

}  // namespace tbell
