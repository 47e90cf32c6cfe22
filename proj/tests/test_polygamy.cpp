#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "polyq/families.hpp"
#include "polyq/polygamy.hpp"

using namespace polyq;

TEST_CASE("k solution covers all four classifications") {
  // joint^mu - max = 1.0 - 0.8, min = 0.5 -> k = 2.5
  const KSolution finite = k_solution(1.0, {0.8, 0.5}, 1.0);
  CHECK(finite.kind == KKind::Finite);
  CHECK(finite.value == doctest::Approx(2.5).epsilon(1e-12));

  const KSolution zero = k_solution(1.0, {0.8, 0.0}, 1.0);
  CHECK(zero.kind == KKind::Zero);
  CHECK(zero.value == 0.0);

  const KSolution any = k_solution(1.0, {1.0, 0.0}, 1.0);
  CHECK(any.kind == KKind::AnyNonnegative);

  const KSolution none = k_solution(1.0, {1.0, 0.5}, 1.0);
  CHECK(none.kind == KKind::NoFiniteSolution);

  CHECK_THROWS_AS(k_solution(1.0, {0.5}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(k_solution(1.0, {0.5, 0.5}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(k_solution(-0.1, {0.5, 0.5}, 1.0), std::invalid_argument);
}

TEST_CASE("mu reweights the k equation") {
  // With mu=2: denominator 1 - 0.64, minimum 0.25.
  const KSolution k = k_solution(1.0, {0.8, 0.5}, 2.0);
  CHECK(k.kind == KKind::Finite);
  CHECK(k.value == doctest::Approx(0.25 / 0.36).epsilon(1e-12));
  CHECK(k.mu == 2.0);
}

TEST_CASE("polygamy power recovers analytic roots") {
  // Two parts at ratio 1/2: 2 * (1/2)^g = 1 at g = 1.
  const PowerResult one = polygamy_power_state(1.0, {0.5, 0.5});
  REQUIRE(one.kind == PowerResult::Kind::Root);
  CHECK(one.value == doctest::Approx(1.0).epsilon(1e-10));

  // Two parts at ratio 1/sqrt(2): root at 2, the saturation benchmark.
  const double r = 1.0 / std::sqrt(2.0);
  const PowerResult two = polygamy_power_state(1.0, {r, r});
  REQUIRE(two.kind == PowerResult::Kind::Root);
  CHECK(two.value == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("polygamy power degenerate verdicts") {
  // Joint does not exceed the largest part: every exponent works.
  CHECK(polygamy_power_state(1.0, {1.0, 0.2}).kind ==
        PowerResult::Kind::Unbounded);
  CHECK(polygamy_power_state(0.0, {0.0, 0.0}).kind ==
        PowerResult::Kind::Unbounded);
  // A single effective positive part never sums to 1 from below.
  CHECK(polygamy_power_state(1.0, {0.5, 0.0}).kind ==
        PowerResult::Kind::NoSolution);
  CHECK(polygamy_power_state(1.0, {0.0, 0.0}).kind ==
        PowerResult::Kind::NoSolution);
}

TEST_CASE("h_beta sign matches the power threshold") {
  const std::vector<double> parts = {0.6, 0.45, 0.3};
  const PowerResult pr = polygamy_power_state(1.0, parts);
  REQUIRE(pr.kind == PowerResult::Kind::Root);
  CHECK(std::abs(h_beta(1.0, parts, pr.value)) < 1e-9);
  CHECK(h_beta(1.0, parts, pr.value - 0.01) < 0.0);
  CHECK(h_beta(1.0, parts, pr.value + 0.01) > 0.0);
  CHECK(h_beta(1.0, parts, 1e-9) < 0.0);  // near beta=0 the sum exceeds 1
}

TEST_CASE("def1 verdicts") {
  const Def1Verdict good = def1_check(1.0, {0.5, 0.4});
  CHECK(good.premise);
  CHECK(good.consequence);
  CHECK(!good.vacuous);

  const Def1Verdict no_premise = def1_check(0.5, {0.5, 0.4});
  CHECK(!no_premise.premise);
  CHECK(no_premise.vacuous);

  const Def1Verdict bad = def1_check(1.0, {0.5, 0.0});
  CHECK(bad.premise);
  CHECK(!bad.consequence);
}

TEST_CASE("one-to-group values of the symmetric single-excitation state") {
  WClassParams p;
  p.a = Vec::Constant(3, cplx(1.0 / std::sqrt(3.0), 0.0));
  const PureState psi = w_state(p);
  const std::array<double, 3> q =
      one_to_group_values(psi, MeasureSpec::concurrence());
  const double expected = 2.0 * std::sqrt(2.0) / 3.0;
  for (double v : q) CHECK(v == doctest::Approx(expected).epsilon(1e-12));
  // All three values equal: the joint never strictly exceeds the max part.
  CHECK(theorem5_power(q).kind == PowerResult::Kind::Unbounded);

  const std::array<double, 3> res = polygon_check(psi, MeasureSpec::concurrence());
  for (double v : res) CHECK(v == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("theorem5 power is consistent with its defining sum") {
  Rng rng(RngSeed{51, 0});
  const PureState psi = random_pure_state(3, rng);
  const std::array<double, 3> q = one_to_group_values(psi, MeasureSpec::eof());
  const PowerResult pr = theorem5_power(q);
  if (pr.kind == PowerResult::Kind::Root) {
    const double s = std::pow(q[1] / q[0], pr.value) + std::pow(q[2] / q[0], pr.value);
    CHECK(s == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("nested chain on three qubits reduces to the pair tuple") {
  Rng rng(RngSeed{52, 0});
  const PureState psi = random_pure_state(3, rng);
  OptimizerConfig cfg;
  cfg.rng = RngSeed{52, 1};
  const OneToRestValues v = one_to_rest_values(psi, MeasureSpec::concurrence(), cfg);
  REQUIRE(v.pairs.size() == 2);
  const auto chain = nested_k_sets(psi, MeasureSpec::concurrence(), 1.0, cfg);
  REQUIRE(chain.size() == 1);
  const KSolution direct = k_solution(v.joint, v.pairs, 1.0);
  CHECK(chain[0].kind == direct.kind);
  if (direct.kind == KKind::Finite)
    CHECK(chain[0].value == doctest::Approx(direct.value).epsilon(1e-12));
}

TEST_CASE("nested chain on four qubits has two levels") {
  Rng rng(RngSeed{53, 0});
  const PureState psi = random_pure_state(4, rng);
  OptimizerConfig cfg;
  cfg.restarts = 6;
  cfg.rng = RngSeed{53, 1};
  const auto chain = nested_k_sets(psi, MeasureSpec::concurrence(), 1.0, cfg);
  CHECK(chain.size() == 2);
}

TEST_CASE("ensemble lower bound counts and minimizes") {
  // Deterministic sampler: alternates a finite tuple (k = 2.0 + index bump),
  // a zero tuple, and a non-binding tuple.
  const TupleSampler sampler = [](std::uint64_t i, Rng&) {
    ValueTuple t;
    t.descriptor = "tuple " + std::to_string(i);
    switch (i % 3) {
      case 0:
        t.q_joint = 1.0;
        t.q_parts = {0.8, 0.4 + 0.01 * static_cast<double>(i)};
        break;
      case 1:
        t.q_joint = 1.0;
        t.q_parts = {0.8, 0.0};
        break;
      default:
        t.q_joint = 1.0;
        t.q_parts = {1.0, 0.0};
        break;
    }
    return t;
  };
  const LowerBoundResult serial =
      ensemble_lower_bound(sampler, 1.0, 9, RngSeed{54, 0}, kStrictTol,
                           ExecMode::Serial);
  const LowerBoundResult parallel =
      ensemble_lower_bound(sampler, 1.0, 9, RngSeed{54, 0}, kStrictTol,
                           ExecMode::Parallel);
  CHECK(serial.found);
  CHECK(serial.finite_count == 3);
  CHECK(serial.zero_count == 3);
  CHECK(serial.nonbinding_count == 3);
  CHECK(serial.argmin_index == 0);
  CHECK(serial.inf_k == doctest::Approx(0.4 / 0.2).epsilon(1e-12));
  CHECK(serial.inf_k == parallel.inf_k);
  CHECK(serial.argmin_index == parallel.argmin_index);
  CHECK(serial.finite_count == parallel.finite_count);

  const TupleSampler degenerate = [](std::uint64_t, Rng&) {
    ValueTuple t;
    t.q_joint = 1.0;
    t.q_parts = {1.0, 0.0};
    return t;
  };
  CHECK_THROWS_AS(ensemble_lower_bound(degenerate, 1.0, 4, RngSeed{54, 1}),
                  std::runtime_error);
}
