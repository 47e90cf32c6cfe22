#pragma once

#include <string>
#include <vector>

#include "polyq/common.hpp"
#include "polyq/rng.hpp"

namespace polyq {

// Normalized pure state of a qubit register.
//
// Qubit ordering: party A1 is the most significant bit of the amplitude
// index, so for three qubits |100> sits at index 4. All index math in the
// library follows this convention.
class PureState {
 public:
  PureState(Vec amplitudes, int num_qubits);
  PureState(Vec amplitudes, int num_qubits, std::vector<std::string> labels);

  static PureState from_basis(int num_qubits, std::size_t basis_index);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const Vec& amplitudes() const { return amplitudes_; }
  cplx amp(std::size_t i) const { return amplitudes_(static_cast<Eigen::Index>(i)); }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  Vec amplitudes_;
  int num_qubits_;
  std::vector<std::string> labels_;
};

// Hermitian, positive semidefinite, unit-trace operator over a list of
// subsystem dimensions (first subsystem most significant in the index).
class DensityMatrix {
 public:
  DensityMatrix(Mat matrix, std::vector<int> subsystem_dims);

  const Mat& matrix() const { return matrix_; }
  const std::vector<int>& subsystem_dims() const { return dims_; }
  int num_parties() const { return static_cast<int>(dims_.size()); }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

 private:
  Mat matrix_;
  std::vector<int> dims_;
};

// Split of the parties into two nonempty disjoint groups covering everything.
struct Bipartition {
  std::vector<int> left;
  std::vector<int> right;

  Bipartition(std::vector<int> l, std::vector<int> r);

  // left vs the complement in [0, num_parties).
  static Bipartition cut(std::vector<int> left_parties, int num_parties);
  // party | rest
  static Bipartition single(int party, int num_parties);
  // A1 | A2...An
  static Bipartition first_vs_rest(int num_parties);

  int num_parties() const { return static_cast<int>(left.size() + right.size()); }
};

struct Eigensystem {
  RealVec values;  // descending
  Mat vectors;     // columns match values
};

std::vector<std::string> default_party_labels(int n);

// Reduced state on `keep` (ascending party order preserved). Trace,
// Hermiticity and positivity carry over.
DensityMatrix partial_trace(const DensityMatrix& state, const std::vector<int>& keep);

// Rank-1 projector |psi><psi| on one-qubit-per-party dims.
DensityMatrix pure_to_density(const PureState& psi);

// Haar-distributed state via normalized i.i.d. complex Gaussian amplitudes.
PureState random_pure_state(int num_qubits, Rng& rng);
PureState random_pure_state(int num_qubits, RngSeed seed);

// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
// Throws if the input is not Hermitian within tolerance.
Eigensystem hermitian_eigensystem(const Mat& m);
Eigensystem hermitian_eigensystem(const DensityMatrix& m);

// Amplitudes of `psi` reshaped across `cut`: rows indexed by the bit pattern
// of cut.left (first listed party most significant), columns by cut.right.
// The Gram matrix of the rows is the reduced state on cut.left.
Mat amplitude_matrix(const PureState& psi, const Bipartition& cut);

// Transpose on the listed parties only.
Mat partial_transpose(const Mat& m, const std::vector<int>& dims,
                      const std::vector<int>& parties);

PureState tensor_product(const PureState& a, const PureState& b);

// rho = G G^dag / tr with G a dim x rank complex Ginibre matrix; rank <= rank(G).
DensityMatrix random_density_matrix(const std::vector<int>& dims, int rank, Rng& rng);

// State files: {"num_qubits": n, "re": [...], "im": [...]}. A norm within
// 1e-8 of 1 is silently renormalized, anything worse is rejected.
PureState load_state_file(const std::string& path);
void save_state_file(const PureState& psi, const std::string& path);

}  // namespace polyq
