#include "polyq/assistance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace polyq {

namespace {

void require_qubit_dims(const DensityMatrix& rho) {
  for (int d : rho.subsystem_dims())
    if (d != 2)
      throw std::invalid_argument("assistance routines require qubit subsystems");
}

// Flat amplitude index for (row, col) of the cut-reshaped amplitude matrix,
// same layout as amplitude_matrix: first listed party most significant.
std::vector<std::size_t> cut_index_map(int n, const Bipartition& cut) {
  const std::size_t dl = std::size_t{1} << cut.left.size();
  const std::size_t dr = std::size_t{1} << cut.right.size();
  std::vector<std::size_t> map(dl * dr);
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
      map[l * dr + r] = bits;
    }
  }
  return map;
}

// Per-thread scratch for evaluating member contributions without allocating
// in the proposal loop.
struct CutWorkspace {
  Eigen::Index dl = 0;
  Eigen::Index dr = 0;
  const std::vector<std::size_t>* map = nullptr;
  Mat reshaped;
  Mat gram;
  RealVec probs;
  Eigen::SelfAdjointEigenSolver<Mat> solver;
};

CutWorkspace make_workspace(const Bipartition& cut,
                            const std::vector<std::size_t>& map) {
  CutWorkspace ws;
  ws.dl = Eigen::Index{1} << cut.left.size();
  ws.dr = Eigen::Index{1} << cut.right.size();
  ws.map = &map;
  ws.reshaped.resize(ws.dl, ws.dr);
  const Eigen::Index g = std::min(ws.dl, ws.dr);
  ws.gram.resize(g, g);
  ws.probs.resize(g);
  return ws;
}

// p * Q(col / sqrt(p)) for a subnormalized ensemble member, via the Schmidt
// probabilities of the member across the cut.
double member_contribution(const Vec& col, CutWorkspace& ws,
                           const MeasureSpec& spec) {
  const double p = col.squaredNorm();
  if (p < kProbFloor) return 0.0;
  for (Eigen::Index l = 0; l < ws.dl; ++l)
    for (Eigen::Index r = 0; r < ws.dr; ++r)
      ws.reshaped(l, r) =
          col((*ws.map)[static_cast<std::size_t>(l * ws.dr + r)]);
  if (ws.dl <= ws.dr)
    ws.gram.noalias() = ws.reshaped * ws.reshaped.adjoint();
  else
    ws.gram.noalias() = ws.reshaped.adjoint() * ws.reshaped;

  if (ws.gram.rows() == 2) {
    // Closed-form 2x2 Hermitian eigenvalues: the common case (single-qubit
    // left side), much cheaper than a solver call in the inner loop.
    const double a = ws.gram(0, 0).real();
    const double d = ws.gram(1, 1).real();
    const double half_tr = 0.5 * (a + d);
    const double det = a * d - std::norm(ws.gram(0, 1));
    const double s = std::sqrt(std::max(0.0, half_tr * half_tr - det));
    ws.probs(0) = std::clamp((half_tr + s) / p, 0.0, 1.0);
    ws.probs(1) = std::clamp((half_tr - s) / p, 0.0, 1.0);
  } else {
    ws.solver.compute(ws.gram, Eigen::EigenvaluesOnly);
    const Eigen::Index g = ws.gram.rows();
    for (Eigen::Index i = 0; i < g; ++i)
      ws.probs(i) = std::clamp(ws.solver.eigenvalues()(g - 1 - i) / p, 0.0, 1.0);
  }
  return p * measure_from_probs(spec, ws.probs);
}

// Hill climb from one random decomposition unitary; returns the best average
// found. Proposals rotate two columns of the subnormalized member matrix,
// which preserves the mixture exactly.
double climb_restart(const Mat& seed_members, const Bipartition& cut,
                     const std::vector<std::size_t>& map, const MeasureSpec& spec,
                     const OptimizerConfig& cfg, Rng rng) {
  const int m = static_cast<int>(seed_members.cols());
  CutWorkspace ws = make_workspace(cut, map);

  Mat members = seed_members * haar_unitary(m, rng);
  RealVec contrib(m);
  for (int k = 0; k < m; ++k)
    contrib(k) = member_contribution(members.col(k), ws, spec);

  Vec cand_a(members.rows());
  Vec cand_b(members.rows());
  const int proposals_per_sweep = m * (m - 1) / 2;
  double sigma = 0.5 * std::numbers::pi;
  int sweep = 0;
  while (sweep < cfg.max_iterations && sigma > cfg.step_tolerance) {
    ++sweep;
    double improvement = 0.0;
    for (int t = 0; t < proposals_per_sweep; ++t) {
      const int k1 = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(m)));
      int k2 = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(m - 1)));
      if (k2 >= k1) ++k2;
      const double theta = sigma * rng.normal();
      const double phi = 2.0 * std::numbers::pi * rng.uniform() - std::numbers::pi;
      const double c = std::cos(theta);
      const double s = std::sin(theta);
      const cplx e(std::cos(phi), std::sin(phi));
      cand_a = c * members.col(k1) + s * e * members.col(k2);
      cand_b = -s * std::conj(e) * members.col(k1) + c * members.col(k2);
      const double va = member_contribution(cand_a, ws, spec);
      const double vb = member_contribution(cand_b, ws, spec);
      const double delta = va + vb - contrib(k1) - contrib(k2);
      if (delta > 1e-15) {
        members.col(k1) = cand_a;
        members.col(k2) = cand_b;
        contrib(k1) = va;
        contrib(k2) = vb;
        improvement += delta;
      }
    }
    if (improvement < 1e-12) sigma *= 0.5;
  }
  return contrib.sum();
}

}  // namespace

int density_rank(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Mat> es(rho.matrix(), Eigen::EigenvaluesOnly);
  int r = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > kRankTol) ++r;
  return r;
}

Ensemble ensemble_from_unitary(const DensityMatrix& rho, const Mat& u, int m) {
  require_qubit_dims(rho);
  if (u.rows() != m || u.cols() != m)
    throw std::invalid_argument("decomposition unitary must be m x m");
  const double unit_err =
      (u.adjoint() * u - Mat::Identity(m, m)).cwiseAbs().maxCoeff();
  if (unit_err > 1e-10)
    throw std::invalid_argument("decomposition matrix is not unitary");

  Eigensystem es = hermitian_eigensystem(rho);
  int r = 0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i)
    if (es.values(i) > kRankTol) ++r;
  if (m < r) throw std::invalid_argument("ensemble size below the state rank");

  const int n = rho.num_parties();
  Ensemble out;
  for (int k = 0; k < m; ++k) {
    Vec v = Vec::Zero(rho.matrix().rows());
    for (int j = 0; j < r; ++j)
      v += u(k, j) * std::sqrt(std::max(0.0, es.values(j))) * es.vectors.col(j);
    const double p = v.squaredNorm();
    if (p < kProbFloor) continue;
    v /= std::sqrt(p);
    out.members.push_back({p, PureState(std::move(v), n)});
  }
  return out;
}

double ensemble_average(const Ensemble& ensemble, const Bipartition& cut,
                        const MeasureSpec& spec) {
  double acc = 0.0;
  for (const auto& member : ensemble.members)
    acc += member.probability * measure_eval(spec, member.state, cut);
  return acc;
}

double assisted_measure(const DensityMatrix& rho, const Bipartition& cut,
                        const MeasureSpec& spec, const OptimizerConfig& cfg) {
  require_qubit_dims(rho);
  if (cut.num_parties() != rho.num_parties())
    throw std::invalid_argument("bipartition party count does not match state");
  MeasureSpec effective = spec;
  effective.validate();
  if (effective.kind == MeasureKind::Tsallis &&
      std::abs(effective.parameter - 1.0) < 1e-6)
    effective = MeasureSpec::eof();
  if (effective.kind == MeasureKind::Tangle && cut.left.size() != 1)
    throw std::invalid_argument("tangle requires a single-qubit left side");
  if (cfg.restarts < 0 || cfg.max_iterations < 1 || cfg.step_tolerance <= 0.0)
    throw std::invalid_argument("bad optimizer configuration");

  Eigensystem es = hermitian_eigensystem(rho);
  int r = 0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i)
    if (es.values(i) > kRankTol) ++r;
  const int n = rho.num_parties();
  if (r <= 1) {
    // Pure input: the single-member decomposition is optimal and exact.
    Vec top = es.vectors.col(0);
    top /= top.norm();
    return measure_eval(effective, PureState(std::move(top), n), cut);
  }

  const int m = (cfg.ensemble_size == 0) ? r * r : cfg.ensemble_size;
  if (m < r) throw std::invalid_argument("ensemble size below the state rank");

  const std::vector<std::size_t> map = cut_index_map(n, cut);
  Mat seed_members = Mat::Zero(rho.matrix().rows(), m);
  for (int j = 0; j < r; ++j)
    seed_members.col(j) = std::sqrt(std::max(0.0, es.values(j))) * es.vectors.col(j);

  // Baseline: the eigendecomposition ensemble itself.
  CutWorkspace ws = make_workspace(cut, map);
  double best = 0.0;
  for (int k = 0; k < m; ++k)
    best += member_contribution(seed_members.col(k), ws, effective);

  const Rng base(cfg.rng);
#pragma omp parallel for schedule(dynamic) reduction(max : best)
  for (int rs = 0; rs < cfg.restarts; ++rs) {
    const double value =
        climb_restart(seed_members, cut, map, effective, cfg,
                      base.substream(static_cast<std::uint64_t>(rs)));
    best = std::max(best, value);
  }
  return best;
}

double ca_two_qubit_closed(const DensityMatrix& rho) {
  const auto& dims = rho.subsystem_dims();
  if (dims.size() != 2 || dims[0] != 2 || dims[1] != 2)
    throw std::invalid_argument("closed form requires a two-qubit state");

  Mat yy = Mat::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;

  // The eigenvalues of rho * spin_flip(rho) are the squared singular values
  // of m = sqrt(rho) yy conj(sqrt(rho)): m m^dag = sqrt(rho) yy conj(rho) yy
  // sqrt(rho). Summing singular values instead of square roots of
  // eigenvalues keeps absolute errors at machine epsilon even when the
  // spectrum touches zero (square roots would amplify them to sqrt(eps)).
  Eigensystem es = hermitian_eigensystem(rho);
  Mat sqrt_rho = Mat::Zero(4, 4);
  for (int j = 0; j < 4; ++j)
    sqrt_rho += std::sqrt(std::max(0.0, es.values(j))) * es.vectors.col(j) *
                es.vectors.col(j).adjoint();
  const Mat m = sqrt_rho * yy * sqrt_rho.conjugate();
  const Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues().sum();
}

double tangle_assisted(const DensityMatrix& rho, const Bipartition& cut,
                       const OptimizerConfig& cfg) {
  return assisted_measure(rho, cut, MeasureSpec::tangle(), cfg);
}

}  // namespace polyq
