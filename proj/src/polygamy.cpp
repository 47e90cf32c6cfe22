#include "polyq/polygamy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace polyq {

namespace {

void require_nonnegative(double q_joint, const std::vector<double>& q_parts) {
  if (q_joint < 0.0) throw std::invalid_argument("joint value must be nonnegative");
  for (double v : q_parts)
    if (v < 0.0) throw std::invalid_argument("part values must be nonnegative");
}

}  // namespace

std::string k_kind_name(KKind kind) {
  switch (kind) {
    case KKind::Finite: return "finite";
    case KKind::Zero: return "zero";
    case KKind::AnyNonnegative: return "any_nonnegative";
    case KKind::NoFiniteSolution: return "no_finite_solution";
  }
  throw std::logic_error("unhandled k kind");
}

KSolution k_solution(double q_joint, const std::vector<double>& q_parts,
                     double mu, double tol) {
  if (mu <= 0.0) throw std::invalid_argument("mu must be positive");
  if (tol <= 0.0) throw std::invalid_argument("tol must be positive");
  if (q_parts.size() < 2)
    throw std::invalid_argument("k_solution needs at least two part values");
  require_nonnegative(q_joint, q_parts);

  const double joint_mu = std::pow(q_joint, mu);
  double max_mu = 0.0;
  double min_mu = std::numeric_limits<double>::infinity();
  for (double v : q_parts) {
    const double vm = std::pow(v, mu);
    max_mu = std::max(max_mu, vm);
    min_mu = std::min(min_mu, vm);
  }
  const double denom = joint_mu - max_mu;

  KSolution out;
  out.mu = mu;
  if (denom > tol) {
    if (min_mu > tol) {
      out.kind = KKind::Finite;
      out.value = min_mu / denom;
    } else {
      out.kind = KKind::Zero;
      out.value = 0.0;
    }
  } else {
    out.kind = (min_mu > tol) ? KKind::NoFiniteSolution : KKind::AnyNonnegative;
    out.value = 0.0;
  }
  return out;
}

double h_beta(double q_joint, const std::vector<double>& q_parts, double beta) {
  if (beta <= 0.0) throw std::invalid_argument("beta must be positive");
  require_nonnegative(q_joint, q_parts);
  double h = std::pow(q_joint, beta);
  for (double v : q_parts) h -= std::pow(v, beta);
  return h;
}

PowerResult polygamy_power_state(double q_joint, const std::vector<double>& q_parts,
                                 double tol) {
  if (tol <= 0.0) throw std::invalid_argument("tol must be positive");
  if (q_parts.size() < 2)
    throw std::invalid_argument("polygamy power needs at least two part values");
  require_nonnegative(q_joint, q_parts);

  const double max_part = *std::max_element(q_parts.begin(), q_parts.end());
  if (q_joint <= tol || q_joint <= max_part + tol)
    return {PowerResult::Kind::Unbounded, 0.0};

  // Ratios are in (0, 1); their gamma-th powers sum to a strictly decreasing
  // function of gamma that crosses 1 exactly once when at least two parts
  // are positive.
  std::vector<double> ratios;
  for (double v : q_parts)
    if (v > 0.0) ratios.push_back(v / q_joint);

  const auto excess = [&ratios](double gamma) {
    double sum = 0.0;
    for (double r : ratios) sum += std::pow(r, gamma);
    return sum - 1.0;
  };

  double lo = 0x1.0p-20;
  double hi = 0x1.0p6;
  if (excess(lo) <= 0.0) return {PowerResult::Kind::NoSolution, 0.0};
  while (excess(hi) > 0.0) {
    if (hi >= 0x1.0p12)
      throw std::runtime_error("polygamy power exceeds the bisection bracket");
    hi *= 2.0;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, lo); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (excess(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double gamma = 0.5 * (lo + hi);
  if (std::abs(excess(gamma)) > 1e-10)
    throw std::runtime_error("bisection residual above tolerance");
  return {PowerResult::Kind::Root, gamma};
}

Def1Verdict def1_check(double q_joint, const std::vector<double>& q_pairs,
                       double tol) {
  if (q_pairs.empty()) throw std::invalid_argument("pair value list is empty");
  require_nonnegative(q_joint, q_pairs);
  const double max_pair = *std::max_element(q_pairs.begin(), q_pairs.end());
  const double min_pair = *std::min_element(q_pairs.begin(), q_pairs.end());
  Def1Verdict v;
  v.premise = (q_joint > max_pair + tol) && (max_pair > tol);
  v.consequence = (min_pair > tol);
  v.vacuous = !v.premise;
  return v;
}

std::array<double, 3> one_to_group_values(const PureState& psi,
                                          const MeasureSpec& spec) {
  if (psi.num_qubits() != 3)
    throw std::invalid_argument("one-to-group values require exactly three parties");
  return {measure_eval(spec, psi, Bipartition::single(0, 3)),
          measure_eval(spec, psi, Bipartition::single(1, 3)),
          measure_eval(spec, psi, Bipartition::single(2, 3))};
}

PowerResult theorem5_power(const std::array<double, 3>& values, double tol) {
  return polygamy_power_state(values[0], {values[1], values[2]}, tol);
}

std::array<double, 3> polygon_check(const PureState& psi, const MeasureSpec& spec) {
  const auto v = one_to_group_values(psi, spec);
  return {v[1] + v[2] - v[0], v[0] + v[2] - v[1], v[0] + v[1] - v[2]};
}

OneToRestValues one_to_rest_values(const PureState& psi, const MeasureSpec& spec,
                                   const OptimizerConfig& cfg) {
  const int n = psi.num_qubits();
  if (n < 2) throw std::invalid_argument("need at least two parties");
  OneToRestValues out;
  out.joint = measure_eval(spec, psi, Bipartition::first_vs_rest(n));
  const DensityMatrix full = pure_to_density(psi);
  const Bipartition pair_cut = Bipartition::single(0, 2);
  out.pairs.reserve(static_cast<std::size_t>(n - 1));
  for (int other = 1; other < n; ++other) {
    const DensityMatrix rho = partial_trace(full, {0, other});
    if (spec.kind == MeasureKind::Concurrence)
      out.pairs.push_back(ca_two_qubit_closed(rho));
    else
      out.pairs.push_back(assisted_measure(rho, pair_cut, spec, cfg));
  }
  return out;
}

std::vector<KSolution> nested_k_sets(const PureState& psi, const MeasureSpec& spec,
                                     double mu, const OptimizerConfig& cfg,
                                     double tol) {
  const int n = psi.num_qubits();
  if (n < 3) throw std::invalid_argument("nested k-sets require at least three parties");

  const DensityMatrix full = pure_to_density(psi);
  const Bipartition pair_cut = Bipartition::single(0, 2);
  // Q_a of the two-qubit reduced state on parties {0, other}.
  const auto pair_value = [&](int other) {
    const DensityMatrix rho = partial_trace(full, {0, other});
    if (spec.kind == MeasureKind::Concurrence) return ca_two_qubit_closed(rho);
    return assisted_measure(rho, pair_cut, spec, cfg);
  };

  // rest[i] = Q(A_1 | A_{i+1}..A_n) on the chain state, 1-indexed levels.
  std::vector<double> rest(static_cast<std::size_t>(n), 0.0);
  rest[1] = measure_eval(spec, psi, Bipartition::first_vs_rest(n));
  for (int i = 2; i <= n - 1; ++i) {
    if (i == n - 1) {
      rest[static_cast<std::size_t>(i)] = pair_value(n - 1);
      break;
    }
    std::vector<int> keep{0};
    for (int p = i; p < n; ++p) keep.push_back(p);
    const DensityMatrix rho = partial_trace(full, keep);
    rest[static_cast<std::size_t>(i)] = assisted_measure(
        rho, Bipartition::single(0, static_cast<int>(keep.size())), spec, cfg);
  }

  std::vector<KSolution> out;
  out.reserve(static_cast<std::size_t>(n - 2));
  for (int i = 1; i <= n - 2; ++i)
    out.push_back(k_solution(rest[static_cast<std::size_t>(i)],
                             {pair_value(i), rest[static_cast<std::size_t>(i + 1)]},
                             mu, tol));
  return out;
}

LowerBoundResult ensemble_lower_bound(const TupleSampler& sampler, double mu,
                                      std::uint64_t count, RngSeed seed,
                                      double tol, ExecMode mode) {
  if (!sampler) throw std::invalid_argument("sampler is empty");
  if (count < 1) throw std::invalid_argument("count must be at least 1");

  struct Row {
    KSolution k;
    std::string descriptor;
  };
  const Rng base(seed);
  const std::vector<Row> rows = map_indexed<Row>(count, mode, [&](std::uint64_t i) {
    Rng sub = base.substream(i);
    const ValueTuple t = sampler(i, sub);
    return Row{k_solution(t.q_joint, t.q_parts, mu, tol), t.descriptor};
  });

  LowerBoundResult res;
  for (std::uint64_t i = 0; i < count; ++i) {
    const Row& row = rows[static_cast<std::size_t>(i)];
    switch (row.k.kind) {
      case KKind::Finite:
        ++res.finite_count;
        if (!res.found || row.k.value < res.inf_k) {
          res.found = true;
          res.inf_k = row.k.value;
          res.argmin_index = i;
          res.argmin_descriptor = row.descriptor;
        }
        break;
      case KKind::Zero:
        ++res.zero_count;
        break;
      case KKind::AnyNonnegative:
        ++res.nonbinding_count;
        break;
      case KKind::NoFiniteSolution:
        ++res.no_solution_count;
        break;
    }
  }
  if (res.finite_count == 0 && res.zero_count == 0)
    throw std::runtime_error("all samples degenerate: no finite or zero k found");
  return res;
}

}  // namespace polyq
