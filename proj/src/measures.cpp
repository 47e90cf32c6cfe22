#include "polyq/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polyq {

namespace {

constexpr double kTsallisEofBand = 1e-6;

void require_tsallis_q(double q) {
  if (q <= 0.0) throw std::invalid_argument("tsallis requires q > 0");
  if (q == 1.0)
    throw std::invalid_argument("tsallis is undefined at q = 1; use eof instead");
}

void require_renyi_alpha(double alpha) {
  if (alpha <= 0.0) throw std::invalid_argument("renyi requires alpha > 0");
  if (alpha == 1.0)
    throw std::invalid_argument("renyi is undefined at alpha = 1; use eof instead");
}

}  // namespace

void MeasureSpec::validate() const {
  switch (kind) {
    case MeasureKind::Tsallis:
      if (parameter <= 0.0) throw std::invalid_argument("tsallis requires q > 0");
      break;
    case MeasureKind::Renyi:
      require_renyi_alpha(parameter);
      break;
    default:
      break;
  }
}

MeasureKind parse_measure_kind(const std::string& name) {
  if (name == "concurrence") return MeasureKind::Concurrence;
  if (name == "tangle") return MeasureKind::Tangle;
  if (name == "tsallis") return MeasureKind::Tsallis;
  if (name == "renyi") return MeasureKind::Renyi;
  if (name == "eof") return MeasureKind::Eof;
  if (name == "negativity") return MeasureKind::Negativity;
  throw std::invalid_argument("unknown measure: " + name);
}

std::string measure_kind_name(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::Concurrence: return "concurrence";
    case MeasureKind::Tangle: return "tangle";
    case MeasureKind::Tsallis: return "tsallis";
    case MeasureKind::Renyi: return "renyi";
    case MeasureKind::Eof: return "eof";
    case MeasureKind::Negativity: return "negativity";
  }
  throw std::logic_error("unhandled measure kind");
}

RealVec schmidt_probs(const PureState& psi, const Bipartition& cut) {
  Mat m = amplitude_matrix(psi, cut);
  // Nonzero eigenvalues of M M^dag and M^dag M coincide; use the smaller Gram.
  Mat gram = (m.rows() <= m.cols()) ? Mat(m * m.adjoint()) : Mat(m.adjoint() * m);
  Eigensystem es = hermitian_eigensystem(gram);
  RealVec probs = es.values;
  for (Eigen::Index i = 0; i < probs.size(); ++i)
    probs(i) = std::clamp(probs(i), 0.0, 1.0);
  return probs;
}

double measure_from_probs(const MeasureSpec& spec, const RealVec& probs) {
  switch (spec.kind) {
    case MeasureKind::Concurrence: {
      const double purity = probs.squaredNorm();
      return std::sqrt(std::max(0.0, 2.0 * (1.0 - purity)));
    }
    case MeasureKind::Tangle: {
      if (probs.size() != 2)
        throw std::invalid_argument("tangle requires a single-qubit left side");
      return 4.0 * probs(0) * probs(1);
    }
    case MeasureKind::Tsallis: {
      require_tsallis_q(spec.parameter);
      double sum = 0.0;
      for (Eigen::Index i = 0; i < probs.size(); ++i)
        sum += std::pow(probs(i), spec.parameter);
      return (1.0 - sum) / (spec.parameter - 1.0);
    }
    case MeasureKind::Renyi: {
      require_renyi_alpha(spec.parameter);
      double sum = 0.0;
      for (Eigen::Index i = 0; i < probs.size(); ++i)
        sum += std::pow(probs(i), spec.parameter);
      return std::log2(sum) / (1.0 - spec.parameter);
    }
    case MeasureKind::Eof: {
      double ent = 0.0;
      for (Eigen::Index i = 0; i < probs.size(); ++i)
        if (probs(i) > 0.0) ent -= probs(i) * std::log2(probs(i));
      return std::max(0.0, ent);
    }
    case MeasureKind::Negativity: {
      double root_sum = 0.0;
      for (Eigen::Index i = 0; i < probs.size(); ++i)
        root_sum += std::sqrt(probs(i));
      return std::max(0.0, (root_sum * root_sum - 1.0) / 2.0);
    }
  }
  throw std::logic_error("unhandled measure kind");
}

double concurrence_pure(const PureState& psi, const Bipartition& cut) {
  return measure_from_probs(MeasureSpec::concurrence(), schmidt_probs(psi, cut));
}

double tangle_pure(const PureState& psi, const Bipartition& cut) {
  if (cut.left.size() != 1)
    throw std::invalid_argument("tangle requires a single-qubit left side");
  return measure_from_probs(MeasureSpec::tangle(), schmidt_probs(psi, cut));
}

double tsallis_pure(const PureState& psi, const Bipartition& cut, double q) {
  require_tsallis_q(q);
  return measure_from_probs(MeasureSpec::tsallis(q), schmidt_probs(psi, cut));
}

double renyi_pure(const PureState& psi, const Bipartition& cut, double alpha) {
  require_renyi_alpha(alpha);
  return measure_from_probs(MeasureSpec::renyi(alpha), schmidt_probs(psi, cut));
}

double eof_pure(const PureState& psi, const Bipartition& cut) {
  return measure_from_probs(MeasureSpec::eof(), schmidt_probs(psi, cut));
}

double negativity_pure(const PureState& psi, const Bipartition& cut) {
  const DensityMatrix rho = pure_to_density(psi);
  const Mat pt = partial_transpose(rho.matrix(), rho.subsystem_dims(), cut.left);
  Eigen::SelfAdjointEigenSolver<Mat> es(pt, Eigen::EigenvaluesOnly);
  const double trace_norm = es.eigenvalues().cwiseAbs().sum();
  return std::max(0.0, (trace_norm - 1.0) / 2.0);
}

double measure_eval(const MeasureSpec& spec, const PureState& psi,
                    const Bipartition& cut) {
  switch (spec.kind) {
    case MeasureKind::Concurrence: return concurrence_pure(psi, cut);
    case MeasureKind::Tangle: return tangle_pure(psi, cut);
    case MeasureKind::Tsallis:
      if (std::abs(spec.parameter - 1.0) < kTsallisEofBand) return eof_pure(psi, cut);
      return tsallis_pure(psi, cut, spec.parameter);
    case MeasureKind::Renyi: return renyi_pure(psi, cut, spec.parameter);
    case MeasureKind::Eof: return eof_pure(psi, cut);
    case MeasureKind::Negativity: return negativity_pure(psi, cut);
  }
  throw std::logic_error("unhandled measure kind");
}

}  // namespace polyq
