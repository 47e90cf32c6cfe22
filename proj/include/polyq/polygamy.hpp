#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "polyq/assistance.hpp"
#include "polyq/measures.hpp"
#include "polyq/state.hpp"
#include "polyq/sweep.hpp"

namespace polyq {

// Classified solution of k * (q_joint^mu - max(parts^mu)) = min(parts^mu).
//
//   Finite          positive denominator and positive minimum: unique k > 0
//   Zero            minimum vanishes, denominator positive: k = 0
//   AnyNonnegative  both sides vanish: every k >= 0 solves the equation
//   NoFiniteSolution denominator vanishes but the minimum does not: no k
//
// `value` is meaningful only for Finite/Zero (0 for the degenerate kinds).
enum class KKind { Finite, Zero, AnyNonnegative, NoFiniteSolution };

struct KSolution {
  KKind kind = KKind::AnyNonnegative;
  double value = 0.0;
  double mu = 1.0;
};

std::string k_kind_name(KKind kind);

KSolution k_solution(double q_joint, const std::vector<double>& q_parts,
                     double mu, double tol = kStrictTol);

// q_joint^beta - sum_i q_parts_i^beta. Nonpositive h certifies the
// beta-polygamy inequality for this value tuple.
double h_beta(double q_joint, const std::vector<double>& q_parts, double beta);

// Root of sum_i (y_i / x)^gamma = 1 for x = q_joint, y_i = q_parts, or a
// degenerate verdict:
//
//   Root        unique gamma* > 0; the largest exponent with h(beta) <= 0
//   Unbounded   x <= max(y_i) + tol or x <= tol: h(beta) <= 0 for every beta
//   NoSolution  fewer than two effective parts: the sum stays below 1
struct PowerResult {
  enum class Kind { Root, Unbounded, NoSolution };
  Kind kind = Kind::Unbounded;
  double value = 0.0;  // gamma* when kind == Root
};

PowerResult polygamy_power_state(double q_joint, const std::vector<double>& q_parts,
                                 double tol = kStrictTol);

// Premise: q_joint strictly exceeds the largest pair value, which is itself
// positive. Consequence: every pair value is positive. The polygamy property
// is witnessed when the premise never holds without the consequence.
struct Def1Verdict {
  bool premise = false;
  bool consequence = false;
  bool vacuous = true;
};

Def1Verdict def1_check(double q_joint, const std::vector<double>& q_pairs,
                       double tol = kStrictTol);

// (Q_{A|BC}, Q_{B|AC}, Q_{C|AB}) for a three-party pure state.
std::array<double, 3> one_to_group_values(const PureState& psi,
                                          const MeasureSpec& spec);

// Power of the one-to-group division: first entry as joint, other two as parts.
PowerResult theorem5_power(const std::array<double, 3>& values,
                           double tol = kStrictTol);

// Triangle residuals (q_B + q_C - q_A, q_A + q_C - q_B, q_A + q_B - q_C) of
// the one-to-group values; all >= -tol certifies the polygon relation.
std::array<double, 3> polygon_check(const PureState& psi, const MeasureSpec& spec);

// Joint value Q(A_1 | A_2..A_n) of a pure state together with the n-1 pair
// assistance values Q_a(rho_{A_1 A_i}). Pairs use the two-qubit closed form
// for concurrence and the optimizer for every other measure.
struct OneToRestValues {
  double joint = 0.0;
  std::vector<double> pairs;
};

OneToRestValues one_to_rest_values(const PureState& psi, const MeasureSpec& spec,
                                   const OptimizerConfig& cfg);

// Chain of k-solutions for an n-party pure state, levels i = 1..n-2:
// joint   Q(A_1 | A_{i+1}..A_n)   (pure measure at i = 1, assistance below)
// parts   { Q_a(A_1 A_{i+1}),  Q(A_1 | A_{i+2}..A_n) }
// Pair assistance uses the two-qubit closed form for concurrence and the
// optimizer for other measures; deeper reduced-chain values always use the
// optimizer.
std::vector<KSolution> nested_k_sets(const PureState& psi, const MeasureSpec& spec,
                                     double mu, const OptimizerConfig& cfg,
                                     double tol = kStrictTol);

// One sampled value tuple: the joint and part measure values plus a short
// human-readable description of the sampled parameters.
struct ValueTuple {
  double q_joint = 0.0;
  std::vector<double> q_parts;
  std::string descriptor;
};

// Produces the tuple for sample `index`; must derive randomness only from the
// passed stream so results are schedule-independent.
using TupleSampler = std::function<ValueTuple(std::uint64_t index, Rng& rng)>;

struct LowerBoundResult {
  bool found = false;       // at least one Finite k among the samples
  double inf_k = 0.0;       // minimum Finite k (meaningful iff found)
  std::uint64_t argmin_index = 0;
  std::string argmin_descriptor;
  std::uint64_t finite_count = 0;
  std::uint64_t zero_count = 0;            // Zero solutions also bound K below
  std::uint64_t nonbinding_count = 0;      // AnyNonnegative samples
  std::uint64_t no_solution_count = 0;     // NoFiniteSolution samples
};

// Minimum Finite k over `count` sampled tuples. AnyNonnegative samples are
// skipped as non-binding; Zero samples are counted (a zero solution pins the
// infimum of the solution set at 0) and tracked separately from Finite ones.
// Sample i draws from substream i of `seed`, so serial and parallel runs
// agree exactly. Throws if every sample is degenerate (neither Finite nor
// Zero).
LowerBoundResult ensemble_lower_bound(const TupleSampler& sampler, double mu,
                                      std::uint64_t count, RngSeed seed,
                                      double tol = kStrictTol,
                                      ExecMode mode = ExecMode::Parallel);

}  // namespace polyq
