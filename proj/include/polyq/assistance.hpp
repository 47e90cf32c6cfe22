#pragma once

#include <vector>

#include "polyq/measures.hpp"
#include "polyq/state.hpp"

namespace polyq {

struct EnsembleMember {
  double probability = 0.0;
  PureState state;
};

// Pure-state decomposition of a density matrix: probabilities sum to 1 and
// the probability-weighted mixture reconstructs the source matrix.
struct Ensemble {
  std::vector<EnsembleMember> members;
};

// Knobs for the decomposition-ceiling search. ensemble_size 0 means
// "rank squared", which is always enough members to reach the optimum for
// a continuous measure.
struct OptimizerConfig {
  int ensemble_size = 0;
  int restarts = 20;
  int max_iterations = 500;
  double step_tolerance = 1e-4;
  RngSeed rng;
};

// Eigenvalues above this count toward the rank of a mixed state.
inline constexpr double kRankTol = 1e-12;

int density_rank(const DensityMatrix& rho);

// All decompositions of rho arise this way: member k is the normalization of
// sum_j u[k][j] * sqrt(mu_j) |e_j> over the nonzero eigenpairs (mu_j, e_j),
// using the first rank(rho) columns of the m x m unitary u. Members with
// probability below 1e-14 are dropped.
Ensemble ensemble_from_unitary(const DensityMatrix& rho, const Mat& u, int m);

// Average measure of the ensemble across the cut.
double ensemble_average(const Ensemble& ensemble, const Bipartition& cut,
                        const MeasureSpec& spec);

// Best found value of sum_k p_k Q(psi_k) over pure-state decompositions of
// rho: a certified lower bound on the assistance value. Random-restart hill
// climbing over the decomposition unitary via two-column complex rotations
// with shrinking step sizes; deterministic given cfg.rng; never below the
// eigendecomposition ensemble average; exact on pure (rank-1) input.
double assisted_measure(const DensityMatrix& rho, const Bipartition& cut,
                        const MeasureSpec& spec, const OptimizerConfig& cfg);

// Closed-form two-qubit concurrence of assistance:
// sum_i sqrt(eig_i(rho * rho_tilde)) with rho_tilde the spin-flipped state
// (sigma_y x sigma_y) conj(rho) (sigma_y x sigma_y). Exact, and the oracle
// the optimizer is tested against.
double ca_two_qubit_closed(const DensityMatrix& rho);

// assisted_measure with the tangle; cut.left must be a single qubit.
double tangle_assisted(const DensityMatrix& rho, const Bipartition& cut,
                       const OptimizerConfig& cfg);

}  // namespace polyq
