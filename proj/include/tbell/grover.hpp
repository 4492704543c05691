#pragma once

// Exact simulation of the modified Grover iteration
//
//     G = (2|psi><psi| - I) O sigma_z O
//
// with the output register initialized to |0> (not |-> ; the output has to
// be measurable mid-circuit) and measured in the computational basis right
// after the first oracle call of an iteration.
//
// Two engines cross-validate each other:
//   * SubspaceState: four amplitudes over {|u>,|m>} x {|0>,|1>}, where |m>
//     is the marked input item and |u> the uniform superposition of the
//     other 2^n - 1 items. The dynamics (including the measurement
//     branches) never leaves this subspace, so this engine is exact for
//     any n up to 60.
//   * FullStateVector: all 2^(n+1) amplitudes, n <= 12, used as an
//     independent check against derivation mistakes.
//
// Operations are pure: they take a state by value/const-ref and return the
// new state. States are compared modulo global phase; measurement
// post-states are renormalized with a nonnegative leading amplitude so
// serialized branches are reproducible.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

namespace tbell {

inline constexpr double kSubspaceNormTol = 1e-12;   // |norm^2 - 1| bound
inline constexpr double kFullNormTol = 1e-10;
inline constexpr double kBranchProbCutoff = 1e-15;  // zero-probability branches
inline constexpr double kDisentangleTol = 1e-20;    // squared-norm leakage bound

// Rotation geometry of the search: cos(theta/2) = sqrt(1 - 1/2^n).
struct GroverParams {
  int n = 0;
  double theta = 0.0;
  double sin_half = 0.0;  // sin(theta/2) = 2^(-n/2)
  double cos_half = 0.0;
  double sin_theta = 0.0;
  double cos_theta = 0.0;

  static GroverParams for_size(int n);  // 1 <= n <= 60

  // Closed forms, evaluated without cancellation.
  double sin_sq_half() const { return std::ldexp(1.0, -n); }
  double sin_sq_theta() const {
    return std::ldexp(1.0, 2 - n) - std::ldexp(1.0, 2 - 2 * n);
  }
};

// Amplitude order: {|u,0>, |m,0>, |u,1>, |m,1>}.
struct SubspaceState {
  GroverParams params;
  Eigen::Vector4cd a = Eigen::Vector4cd::Zero();
};

enum SubspaceIndex { kU0 = 0, kM0 = 1, kU1 = 2, kM1 = 3 };

// Dense engine; amplitude index = 2*x + y for input x, output bit y.
struct FullStateVector {
  int n = 0;
  std::uint64_t marked = 0;
  Eigen::VectorXcd a;
};

template <typename State>
struct MeasurementBranch {
  int outcome = 0;
  double probability = 0.0;
  State post_state;
};

// Uniform superposition on the input register, |0> on the output register.
SubspaceState subspace_initial(int n);                             // n in [1, 60]
FullStateVector full_initial(int n, std::uint64_t marked = 0);     // n in [1, 12]

// O |x>|y> = |x>|y xor F(x)>: flips the output bit on the marked component.
SubspaceState apply_oracle(SubspaceState state);
FullStateVector apply_oracle(FullStateVector state);

// sigma_z on the output register: negates every |.>|1> amplitude.
SubspaceState apply_output_phase(SubspaceState state);
FullStateVector apply_output_phase(FullStateVector state);

// Inversion about average on the input register. Requires the output
// register to be a pure |0> or |1> factor; throws std::logic_error otherwise.
SubspaceState apply_diffusion(SubspaceState state);
FullStateVector apply_diffusion(FullStateVector state);

// One full iteration O, sigma_z, O, diffusion. Requires output in |0>.
SubspaceState grover_iteration(SubspaceState state);
FullStateVector grover_iteration(FullStateVector state);

// The remainder of an iteration after its first oracle call (and a
// possible output measurement): sigma_z, O, diffusion.
SubspaceState finish_iteration(SubspaceState state);
FullStateVector finish_iteration(FullStateVector state);

// Computational-basis measurement of the output register. Branches with
// probability below kBranchProbCutoff are omitted.
std::vector<MeasurementBranch<SubspaceState>> measure_output(const SubspaceState& state);
std::vector<MeasurementBranch<FullStateVector>> measure_output(const FullStateVector& state);

// Probability that measuring the input register would yield the marked item.
double success_probability(const SubspaceState& state);
double success_probability(const FullStateVector& state);

// L unmeasured iterations from the initial state.
struct SubspaceRun {
  SubspaceState final_state;
  double success_probability = 0.0;
};
struct FullRun {
  FullStateVector final_state;
  double success_probability = 0.0;
};
SubspaceRun run_unmeasured(int n, std::uint64_t iterations);
FullRun run_unmeasured_full(int n, std::uint64_t iterations, std::uint64_t marked = 0);

// ---- engine cross-validation ------------------------------------------

enum class ScriptOp {
  oracle,
  output_phase,
  diffusion,
  iteration,
  finish_iteration,
  measure_output,
};
using Script = std::vector<ScriptOp>;

// Script measuring the pair (A_k, A_{k+1}); for k = 0 only A_1 is a real
// measurement (A_0 is the constant 0).
Script measured_pair_script(int k);

// Probability of each measurement-outcome sequence a script can produce.
using OutcomeDistribution = std::map<std::vector<int>, double>;

OutcomeDistribution run_script(const SubspaceState& initial, const Script& script);
OutcomeDistribution run_script(const FullStateVector& initial, const Script& script);

double total_variation(const OutcomeDistribution& p, const OutcomeDistribution& q);

// Runs the script on both engines from the standard initial state and
// returns the total-variation distance between outcome distributions.
// Contract: <= 1e-10 for any valid script. n <= 12 (full engine).
double engine_pair_check(int n, const Script& script, std::uint64_t marked = 0);

}  // namespace tbell
