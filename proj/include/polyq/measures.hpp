#pragma once

#include <string>

#include "polyq/state.hpp"

namespace polyq {

enum class MeasureKind { Concurrence, Tangle, Tsallis, Renyi, Eof, Negativity };

// Selects one bipartite pure-state entanglement measure Q. `parameter` is q
// for Tsallis and alpha for Renyi, ignored otherwise.
struct MeasureSpec {
  MeasureKind kind = MeasureKind::Concurrence;
  double parameter = 0.0;

  static MeasureSpec concurrence() { return {MeasureKind::Concurrence, 0.0}; }
  static MeasureSpec tangle() { return {MeasureKind::Tangle, 0.0}; }
  static MeasureSpec tsallis(double q) { return {MeasureKind::Tsallis, q}; }
  static MeasureSpec renyi(double alpha) { return {MeasureKind::Renyi, alpha}; }
  static MeasureSpec eof() { return {MeasureKind::Eof, 0.0}; }
  static MeasureSpec negativity() { return {MeasureKind::Negativity, 0.0}; }

  // Throws std::invalid_argument on out-of-range parameters (tsallis/renyi
  // need parameter > 0; renyi additionally parameter != 1).
  void validate() const;
};

MeasureKind parse_measure_kind(const std::string& name);
std::string measure_kind_name(MeasureKind kind);

// Squared Schmidt coefficients of psi across the cut: the eigenvalues of the
// reduced state on cut.left, descending, clamped to [0,1]. Computed on the
// smaller side of the cut, so the vector has min(dim_left, dim_right) entries.
RealVec schmidt_probs(const PureState& psi, const Bipartition& cut);

// Measure value as a function of the Schmidt probabilities alone. All six
// measures reduce to this on pure states (negativity via the identity
// N = ((sum_i sqrt(lambda_i))^2 - 1)/2). Tangle requires exactly two entries.
double measure_from_probs(const MeasureSpec& spec, const RealVec& probs);

// sqrt(2(1 - Tr rho_L^2)); 0 iff product across the cut.
double concurrence_pure(const PureState& psi, const Bipartition& cut);

// 4 det rho_L; requires cut.left to be a single qubit.
double tangle_pure(const PureState& psi, const Bipartition& cut);

// (1 - sum lambda^q)/(q - 1); q > 0, q != 1 (use eof_pure at q = 1).
double tsallis_pure(const PureState& psi, const Bipartition& cut, double q);

// log2(sum lambda^alpha)/(1 - alpha); alpha > 0, alpha != 1.
double renyi_pure(const PureState& psi, const Bipartition& cut, double alpha);

// von Neumann entropy of the reduced state in bits, 0 log 0 := 0.
double eof_pure(const PureState& psi, const Bipartition& cut);

// (trace norm of the partial transpose on cut.left - 1)/2, computed literally
// on the full density matrix.
double negativity_pure(const PureState& psi, const Bipartition& cut);

// Dispatcher. Tsallis with |q - 1| < 1e-6 delegates to eof_pure to avoid
// catastrophic cancellation near the von Neumann limit.
double measure_eval(const MeasureSpec& spec, const PureState& psi,
                    const Bipartition& cut);

}  // namespace polyq
