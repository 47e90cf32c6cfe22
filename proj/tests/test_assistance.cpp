#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "polyq/assistance.hpp"

using namespace polyq;

namespace {

const Bipartition kCut2 = Bipartition::single(0, 2);

DensityMatrix bell_density() {
  Vec v = Vec::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return pure_to_density(PureState(v, 2));
}

DensityMatrix maximally_mixed2() {
  return DensityMatrix(Mat::Identity(4, 4) / 4.0, {2, 2});
}

}  // namespace

TEST_CASE("ensembles from unitaries reconstruct the state") {
  Rng rng(RngSeed{41, 0});
  const DensityMatrix rho = random_density_matrix({2, 2}, 3, rng);
  const Mat u = haar_unitary(9, rng);
  const Ensemble e = ensemble_from_unitary(rho, u, 9);
  double total = 0.0;
  Mat mix = Mat::Zero(4, 4);
  for (const EnsembleMember& m : e.members) {
    CHECK(m.probability > 0.0);
    total += m.probability;
    mix += m.probability *
           (m.state.amplitudes() * m.state.amplitudes().adjoint());
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((mix - rho.matrix()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK_THROWS_AS(ensemble_from_unitary(rho, Mat::Random(9, 9), 9),
                  std::invalid_argument);
}

TEST_CASE("closed-form two-qubit assistance reference points") {
  CHECK(ca_two_qubit_closed(bell_density()) == doctest::Approx(1.0).epsilon(1e-12));
  // The maximally mixed state splits into four Bell states: assistance 1.
  CHECK(ca_two_qubit_closed(maximally_mixed2()) ==
        doctest::Approx(1.0).epsilon(1e-12));
  const DensityMatrix product =
      pure_to_density(PureState::from_basis(2, 2));
  CHECK(std::abs(ca_two_qubit_closed(product)) < 1e-10);
}

TEST_CASE("assistance of a pure state is its pure measure") {
  Rng rng(RngSeed{42, 0});
  const PureState psi = random_pure_state(2, rng);
  const DensityMatrix rho = pure_to_density(psi);
  OptimizerConfig cfg;
  cfg.restarts = 2;
  cfg.rng = RngSeed{42, 1};
  const double v = assisted_measure(rho, kCut2, MeasureSpec::concurrence(), cfg);
  CHECK(v == doctest::Approx(concurrence_pure(psi, kCut2)).epsilon(1e-10));
}

TEST_CASE("optimizer result dominates the eigendecomposition ensemble") {
  Rng rng(RngSeed{43, 0});
  for (int rep = 0; rep < 5; ++rep) {
    Rng sub = rng.substream(rep);
    const DensityMatrix rho = random_density_matrix({2, 2}, 1 + rep % 4, sub);
    const int r = density_rank(rho);
    const double baseline = ensemble_average(
        ensemble_from_unitary(rho, Mat::Identity(r, r), r), kCut2,
        MeasureSpec::eof());
    OptimizerConfig cfg;
    cfg.restarts = 4;
    cfg.max_iterations = 60;
    cfg.rng = RngSeed{43, 1};
    const double v = assisted_measure(rho, kCut2, MeasureSpec::eof(), cfg);
    CHECK(v >= baseline - 1e-12);
  }
}

TEST_CASE("optimizer reaches the two-qubit closed form") {
  Rng rng(RngSeed{44, 0});
  OptimizerConfig cfg;
  cfg.ensemble_size = 16;
  cfg.restarts = 12;
  cfg.rng = RngSeed{44, 1};
  for (int rep = 0; rep < 6; ++rep) {
    Rng sub = rng.substream(rep);
    const DensityMatrix rho = random_density_matrix({2, 2}, 2 + rep % 3, sub);
    const double oracle = ca_two_qubit_closed(rho);
    const double v = assisted_measure(rho, kCut2, MeasureSpec::concurrence(), cfg);
    CHECK(v <= oracle + 1e-9);
    CHECK(v >= oracle - 1e-3);
  }
}

TEST_CASE("assisted measure is deterministic under a fixed config") {
  Rng rng(RngSeed{45, 0});
  const DensityMatrix rho = random_density_matrix({2, 2}, 3, rng);
  OptimizerConfig cfg;
  cfg.restarts = 6;
  cfg.rng = RngSeed{45, 1};
  const double a = assisted_measure(rho, kCut2, MeasureSpec::concurrence(), cfg);
  const double b = assisted_measure(rho, kCut2, MeasureSpec::concurrence(), cfg);
  CHECK(a == b);
}

TEST_CASE("tangle assistance dominates squared concurrence assistance") {
  // Averaging C^2 over the optimal concurrence ensemble already gives at
  // least (avg C)^2 = (C_a)^2, so tau_a >= (C_a)^2 up to the optimizer gap.
  Rng rng(RngSeed{46, 0});
  const DensityMatrix rho = random_density_matrix({2, 2}, 2, rng);
  OptimizerConfig cfg;
  cfg.ensemble_size = 16;
  cfg.restarts = 12;
  cfg.rng = RngSeed{46, 1};
  const double ta = tangle_assisted(rho, kCut2, cfg);
  const double ca = ca_two_qubit_closed(rho);
  CHECK(ta >= ca * ca - 1e-3);
  CHECK(ta <= 1.0 + 1e-12);
}

TEST_CASE("rank counts strictly positive eigenvalues") {
  CHECK(density_rank(bell_density()) == 1);
  CHECK(density_rank(maximally_mixed2()) == 4);
}

TEST_CASE("qubit-only guard") {
  Rng rng(RngSeed{47, 0});
  const DensityMatrix rho = random_density_matrix({3, 3}, 2, rng);
  OptimizerConfig cfg;
  cfg.rng = RngSeed{47, 1};
  CHECK_THROWS_AS(
      assisted_measure(rho, Bipartition::single(0, 2), MeasureSpec::concurrence(), cfg),
      std::invalid_argument);
}
