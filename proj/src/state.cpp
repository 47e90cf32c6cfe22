#include "polyq/state.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace polyq {

namespace {

std::size_t check_qubit_dim(const Vec& amps, int num_qubits) {
  if (num_qubits < 1) throw std::invalid_argument("num_qubits must be >= 1");
  if (num_qubits > 30) throw std::invalid_argument("num_qubits too large for dense storage");
  const std::size_t want = std::size_t{1} << num_qubits;
  if (static_cast<std::size_t>(amps.size()) != want)
    throw std::invalid_argument("amplitude vector length must be 2^num_qubits");
  return want;
}

void check_party_list(const std::vector<int>& parties, int num_parties,
                      const char* what) {
  if (parties.empty()) throw std::invalid_argument(std::string(what) + " is empty");
  std::set<int> seen;
  for (int p : parties) {
    if (p < 0 || p >= num_parties)
      throw std::invalid_argument(std::string(what) + ": party index out of range");
    if (!seen.insert(p).second)
      throw std::invalid_argument(std::string(what) + ": duplicate party index");
  }
}

// Strides for a mixed-radix index, first subsystem most significant.
std::vector<std::size_t> strides_for(const std::vector<int>& dims) {
  std::vector<std::size_t> s(dims.size());
  std::size_t acc = 1;
  for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = acc;
    acc *= static_cast<std::size_t>(dims[static_cast<std::size_t>(i)]);
  }
  return s;
}

std::size_t total_dim(const std::vector<int>& dims) {
  std::size_t acc = 1;
  for (int d : dims) acc *= static_cast<std::size_t>(d);
  return acc;
}

}  // namespace

PureState::PureState(Vec amplitudes, int num_qubits)
    : PureState(std::move(amplitudes), num_qubits, default_party_labels(num_qubits)) {}

PureState::PureState(Vec amplitudes, int num_qubits, std::vector<std::string> labels)
    : amplitudes_(std::move(amplitudes)), num_qubits_(num_qubits), labels_(std::move(labels)) {
  check_qubit_dim(amplitudes_, num_qubits_);
  if (labels_.size() != static_cast<std::size_t>(num_qubits_))
    throw std::invalid_argument("label count must equal num_qubits");
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > kNormTol)
    throw std::invalid_argument("pure state amplitudes are not normalized");
}

PureState PureState::from_basis(int num_qubits, std::size_t basis_index) {
  if (num_qubits < 1) throw std::invalid_argument("num_qubits must be >= 1");
  const std::size_t d = std::size_t{1} << num_qubits;
  if (basis_index >= d) throw std::invalid_argument("basis index out of range");
  Vec v = Vec::Zero(static_cast<Eigen::Index>(d));
  v(static_cast<Eigen::Index>(basis_index)) = 1.0;
  return PureState(std::move(v), num_qubits);
}

DensityMatrix::DensityMatrix(Mat matrix, std::vector<int> subsystem_dims)
    : matrix_(std::move(matrix)), dims_(std::move(subsystem_dims)) {
  if (dims_.empty()) throw std::invalid_argument("subsystem_dims is empty");
  for (int d : dims_)
    if (d < 1) throw std::invalid_argument("subsystem dimension must be positive");
  const std::size_t d = total_dim(dims_);
  if (matrix_.rows() != matrix_.cols() ||
      static_cast<std::size_t>(matrix_.rows()) != d)
    throw std::invalid_argument("matrix dimension must equal product of subsystem_dims");
  const double herm = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermTol) throw std::invalid_argument("density matrix is not Hermitian");
  const double tr = matrix_.trace().real();
  if (std::abs(tr - 1.0) > kNormTol)
    throw std::invalid_argument("density matrix trace must be 1");
  Eigen::SelfAdjointEigenSolver<Mat> es(matrix_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPsdTol)
    throw std::invalid_argument("density matrix has a negative eigenvalue");
}

Bipartition::Bipartition(std::vector<int> l, std::vector<int> r)
    : left(std::move(l)), right(std::move(r)) {
  if (left.empty() || right.empty())
    throw std::invalid_argument("bipartition sides must be nonempty");
  std::sort(left.begin(), left.end());
  std::sort(right.begin(), right.end());
  std::set<int> all;
  for (int p : left)
    if (!all.insert(p).second) throw std::invalid_argument("bipartition sides overlap");
  for (int p : right)
    if (!all.insert(p).second) throw std::invalid_argument("bipartition sides overlap");
  const int n = num_parties();
  for (int p : all)
    if (p < 0 || p >= n)
      throw std::invalid_argument("bipartition must cover exactly parties 0..n-1");
}

Bipartition Bipartition::cut(std::vector<int> left_parties, int num_parties) {
  check_party_list(left_parties, num_parties, "cut.left");
  std::set<int> ls(left_parties.begin(), left_parties.end());
  std::vector<int> right;
  for (int p = 0; p < num_parties; ++p)
    if (!ls.count(p)) right.push_back(p);
  return Bipartition(std::move(left_parties), std::move(right));
}

Bipartition Bipartition::single(int party, int num_parties) {
  return cut({party}, num_parties);
}

Bipartition Bipartition::first_vs_rest(int num_parties) {
  return single(0, num_parties);
}

std::vector<std::string> default_party_labels(int n) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) labels.push_back("A" + std::to_string(i));
  return labels;
}

DensityMatrix partial_trace(const DensityMatrix& state, const std::vector<int>& keep) {
  const auto& dims = state.subsystem_dims();
  const int n = state.num_parties();
  check_party_list(keep, n, "keep");

  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  std::set<int> kept_set(kept.begin(), kept.end());
  std::vector<int> traced;
  for (int p = 0; p < n; ++p)
    if (!kept_set.count(p)) traced.push_back(p);

  const auto strides = strides_for(dims);
  std::vector<int> kdims, tdims;
  for (int p : kept) kdims.push_back(dims[static_cast<std::size_t>(p)]);
  for (int p : traced) tdims.push_back(dims[static_cast<std::size_t>(p)]);
  const std::size_t kd = total_dim(kdims);
  const std::size_t td = total_dim(tdims);

  // Map local (kept / traced) indices to their contribution in the full index.
  auto offsets = [&](const std::vector<int>& parties, const std::vector<int>& ldims,
                     std::size_t ld) {
    std::vector<std::size_t> off(ld, 0);
    for (std::size_t li = 0; li < ld; ++li) {
      std::size_t rem = li;
      for (int j = static_cast<int>(parties.size()) - 1; j >= 0; --j) {
        const auto ju = static_cast<std::size_t>(j);
        const auto digit = rem % static_cast<std::size_t>(ldims[ju]);
        rem /= static_cast<std::size_t>(ldims[ju]);
        off[li] += digit * strides[static_cast<std::size_t>(parties[ju])];
      }
    }
    return off;
  };
  const auto koff = offsets(kept, kdims, kd);
  const auto toff = offsets(traced, tdims, td);

  Mat out = Mat::Zero(static_cast<Eigen::Index>(kd), static_cast<Eigen::Index>(kd));
  const Mat& m = state.matrix();
  for (std::size_t i = 0; i < kd; ++i)
    for (std::size_t j = 0; j < kd; ++j) {
      cplx acc = 0.0;
      for (std::size_t t = 0; t < td; ++t)
        acc += m(static_cast<Eigen::Index>(koff[i] + toff[t]),
                 static_cast<Eigen::Index>(koff[j] + toff[t]));
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
    }
  return DensityMatrix(std::move(out), std::move(kdims));
}

DensityMatrix pure_to_density(const PureState& psi) {
  const Vec& a = psi.amplitudes();
  Mat m = a * a.adjoint();
  return DensityMatrix(std::move(m), std::vector<int>(static_cast<std::size_t>(psi.num_qubits()), 2));
}

PureState random_pure_state(int num_qubits, Rng& rng) {
  if (num_qubits < 1) throw std::invalid_argument("num_qubits must be >= 1");
  const std::size_t d = std::size_t{1} << num_qubits;
  Vec v(static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) v(static_cast<Eigen::Index>(i)) = rng.complex_normal();
  const double norm = v.norm();
  if (norm == 0.0) throw std::runtime_error("degenerate Gaussian sample");
  v /= norm;
  return PureState(std::move(v), num_qubits);
}

PureState random_pure_state(int num_qubits, RngSeed seed) {
  Rng rng(seed);
  return random_pure_state(num_qubits, rng);
}

Eigensystem hermitian_eigensystem(const Mat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermTol) throw std::invalid_argument("matrix is not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  const Eigen::Index n = m.rows();
  Eigensystem out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  // Eigen sorts ascending; flip to descending.
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = es.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = es.eigenvectors().col(n - 1 - i);
  }
  return out;
}

Eigensystem hermitian_eigensystem(const DensityMatrix& m) {
  return hermitian_eigensystem(m.matrix());
}

Mat amplitude_matrix(const PureState& psi, const Bipartition& cut) {
  const int n = psi.num_qubits();
  if (cut.num_parties() != n)
    throw std::invalid_argument("bipartition party count does not match state");
  const std::size_t dl = std::size_t{1} << cut.left.size();
  const std::size_t dr = std::size_t{1} << cut.right.size();
  Mat m(static_cast<Eigen::Index>(dl), static_cast<Eigen::Index>(dr));
  for (std::size_t l = 0; l < dl; ++l) {
    std::size_t lbits = 0;
    for (std::size_t i = 0; i < cut.left.size(); ++i)
      if (l & (std::size_t{1} << (cut.left.size() - 1 - i)))
        lbits |= std::size_t{1} << (n - 1 - cut.left[i]);
    for (std::size_t r = 0; r < dr; ++r) {
      std::size_t bits = lbits;
      for (std::size_t i = 0; i < cut.right.size(); ++i)
        if (r & (std::size_t{1} << (cut.right.size() - 1 - i)))
          bits |= std::size_t{1} << (n - 1 - cut.right[i]);
      m(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(r)) = psi.amp(bits);
    }
  }
  return m;
}

Mat partial_transpose(const Mat& m, const std::vector<int>& dims,
                      const std::vector<int>& parties) {
  const std::size_t d = total_dim(dims);
  if (m.rows() != m.cols() || static_cast<std::size_t>(m.rows()) != d)
    throw std::invalid_argument("matrix dimension must equal product of dims");
  check_party_list(parties, static_cast<int>(dims.size()), "transposed parties");
  const auto strides = strides_for(dims);
  std::set<int> tset(parties.begin(), parties.end());

  Mat out(m.rows(), m.cols());
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      // Swap the digits of the transposed parties between row and column.
      std::size_t ii = 0, jj = 0;
      for (std::size_t p = 0; p < dims.size(); ++p) {
        const std::size_t dp = static_cast<std::size_t>(dims[p]);
        const std::size_t di = (i / strides[p]) % dp;
        const std::size_t dj = (j / strides[p]) % dp;
        if (tset.count(static_cast<int>(p))) {
          ii += dj * strides[p];
          jj += di * strides[p];
        } else {
          ii += di * strides[p];
          jj += dj * strides[p];
        }
      }
      out(static_cast<Eigen::Index>(ii), static_cast<Eigen::Index>(jj)) =
          m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  return out;
}

PureState tensor_product(const PureState& a, const PureState& b) {
  const std::size_t da = a.dim(), db = b.dim();
  Vec v(static_cast<Eigen::Index>(da * db));
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j)
      v(static_cast<Eigen::Index>(i * db + j)) = a.amp(i) * b.amp(j);
  return PureState(std::move(v), a.num_qubits() + b.num_qubits());
}

DensityMatrix random_density_matrix(const std::vector<int>& dims, int rank, Rng& rng) {
  const std::size_t d = total_dim(dims);
  if (rank < 1 || static_cast<std::size_t>(rank) > d)
    throw std::invalid_argument("rank must be in [1, dim]");
  Mat g(static_cast<Eigen::Index>(d), rank);
  for (int j = 0; j < rank; ++j)
    for (std::size_t i = 0; i < d; ++i)
      g(static_cast<Eigen::Index>(i), j) = rng.complex_normal();
  Mat rho = g * g.adjoint();
  rho /= rho.trace().real();
  // Symmetrize away the last-ulp asymmetry from the product.
  rho = ((rho + rho.adjoint()) / 2.0).eval();
  return DensityMatrix(std::move(rho), dims);
}

PureState load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open state file: " + path);
  nlohmann::json j;
  in >> j;
  if (!j.contains("num_qubits") || !j.contains("re") || !j.contains("im"))
    throw std::runtime_error("state file missing num_qubits/re/im: " + path);
  const int n = j.at("num_qubits").get<int>();
  if (n < 1) throw std::runtime_error("state file: num_qubits must be >= 1");
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  const std::size_t d = std::size_t{1} << n;
  if (re.size() != d || im.size() != d)
    throw std::runtime_error("state file: re/im must each have 2^num_qubits entries");
  Vec v(static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) v(static_cast<Eigen::Index>(i)) = cplx(re[i], im[i]);
  const double norm = v.norm();
  if (std::abs(norm - 1.0) > kFileNormTol)
    throw std::runtime_error("state file: norm deviates from 1 by more than 1e-8");
  v /= norm;
  return PureState(std::move(v), n);
}

void save_state_file(const PureState& psi, const std::string& path) {
  nlohmann::json j;
  j["num_qubits"] = psi.num_qubits();
  std::vector<double> re(psi.dim()), im(psi.dim());
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    re[i] = psi.amp(i).real();
    im[i] = psi.amp(i).imag();
  }
  j["re"] = re;
  j["im"] = im;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write state file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace polyq
