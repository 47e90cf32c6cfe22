#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <stdexcept>

#include "polyq/state.hpp"

using namespace polyq;

namespace {

PureState bell_phi_plus() {
  Vec v = Vec::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return PureState(v, 2);
}

PureState ghz3() {
  Vec v = Vec::Zero(8);
  v(0) = v(7) = 1.0 / std::sqrt(2.0);
  return PureState(v, 3);
}

}  // namespace

TEST_CASE("pure state validation") {
  Vec v = Vec::Zero(4);
  v(0) = 1.0;
  CHECK_NOTHROW(PureState(v, 2));
  CHECK_THROWS_AS(PureState(v, 3), std::invalid_argument);  // dim mismatch
  v(0) = 0.5;
  CHECK_THROWS_AS(PureState(v, 2), std::invalid_argument);  // not normalized
}

TEST_CASE("basis states live at the expected index") {
  // First party is the most significant bit: |100> is index 4.
  const PureState psi = PureState::from_basis(3, 4);
  CHECK(psi.amp(4) == cplx(1.0, 0.0));
  CHECK(psi.dim() == 8);
  CHECK(psi.num_qubits() == 3);
}

TEST_CASE("bipartition validation") {
  CHECK_NOTHROW(Bipartition({0}, {1, 2}));
  CHECK_THROWS_AS(Bipartition({0, 1}, {1, 2}), std::invalid_argument);  // overlap
  CHECK_THROWS_AS(Bipartition({0}, {2}), std::invalid_argument);        // gap
  CHECK_THROWS_AS(Bipartition({}, {0, 1}), std::invalid_argument);      // empty
  const Bipartition c = Bipartition::cut({2, 0}, 3);
  CHECK(c.left == std::vector<int>{0, 2});
  CHECK(c.right == std::vector<int>{1});
  CHECK(Bipartition::single(1, 3).left == std::vector<int>{1});
  CHECK(Bipartition::first_vs_rest(4).right == std::vector<int>{1, 2, 3});
}

TEST_CASE("partial trace of a Bell pair is maximally mixed") {
  const DensityMatrix rho = pure_to_density(bell_phi_plus());
  const DensityMatrix a = partial_trace(rho, {0});
  REQUIRE(a.dim() == 2);
  CHECK(std::abs(a.matrix()(0, 0).real() - 0.5) < 1e-14);
  CHECK(std::abs(a.matrix()(1, 1).real() - 0.5) < 1e-14);
  CHECK(std::abs(a.matrix()(0, 1)) < 1e-14);
}

TEST_CASE("partial trace keeps marginals consistent") {
  Rng rng(RngSeed{11, 0});
  const PureState psi = random_pure_state(3, rng);
  const DensityMatrix rho = pure_to_density(psi);
  const DensityMatrix bc = partial_trace(rho, {1, 2});
  const DensityMatrix c_direct = partial_trace(rho, {2});
  const DensityMatrix c_nested = partial_trace(bc, {1});  // index 1 within {1,2}
  CHECK((c_direct.matrix() - c_nested.matrix()).cwiseAbs().maxCoeff() < 1e-13);
  CHECK(std::abs(bc.matrix().trace().real() - 1.0) < 1e-13);
}

TEST_CASE("amplitude matrix gram equals the reduced state") {
  Rng rng(RngSeed{12, 0});
  const PureState psi = random_pure_state(3, rng);
  const Bipartition cut = Bipartition::cut({0, 2}, 3);
  const Mat m = amplitude_matrix(psi, cut);
  REQUIRE(m.rows() == 4);
  REQUIRE(m.cols() == 2);
  const Mat gram = m * m.adjoint();
  const DensityMatrix red = partial_trace(pure_to_density(psi), {0, 2});
  CHECK((gram - red.matrix()).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("partial transpose of a Bell pair has a negative eigenvalue") {
  const DensityMatrix rho = pure_to_density(bell_phi_plus());
  const Mat pt = partial_transpose(rho.matrix(), {2, 2}, {0});
  const Eigensystem es = hermitian_eigensystem(pt);
  CHECK(std::abs(es.values(3) + 0.5) < 1e-12);
  const Mat back = partial_transpose(pt, {2, 2}, {0});
  CHECK((back - rho.matrix()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("hermitian eigensystem reconstructs and sorts descending") {
  Rng rng(RngSeed{13, 0});
  const DensityMatrix rho = random_density_matrix({2, 2}, 3, rng);
  const Eigensystem es = hermitian_eigensystem(rho);
  for (int i = 1; i < es.values.size(); ++i) CHECK(es.values(i - 1) >= es.values(i));
  const Mat rebuilt =
      es.vectors * es.values.asDiagonal().toDenseMatrix().cast<cplx>() *
      es.vectors.adjoint();
  CHECK((rebuilt - rho.matrix()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK_THROWS_AS(hermitian_eigensystem(Mat::Random(3, 3)), std::invalid_argument);
}

TEST_CASE("density matrix validation") {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = 1.2;
  m(1, 1) = -0.2;
  CHECK_THROWS_AS(DensityMatrix(m, {2}), std::invalid_argument);  // negative eigenvalue
  m(0, 0) = 0.7;
  m(1, 1) = 0.7;
  CHECK_THROWS_AS(DensityMatrix(m, {2}), std::invalid_argument);  // trace != 1
}

TEST_CASE("random density matrix has the requested rank") {
  Rng rng(RngSeed{14, 0});
  const DensityMatrix rho = random_density_matrix({2, 2}, 2, rng);
  const Eigensystem es = hermitian_eigensystem(rho);
  CHECK(es.values(0) > 1e-6);
  CHECK(es.values(1) > 1e-6);
  CHECK(std::abs(es.values(2)) < 1e-12);
  CHECK(std::abs(es.values(3)) < 1e-12);
}

TEST_CASE("tensor product stacks registers") {
  const PureState p = tensor_product(PureState::from_basis(1, 1), bell_phi_plus());
  REQUIRE(p.num_qubits() == 3);
  CHECK(std::abs(p.amp(4) - cplx(1.0 / std::sqrt(2.0), 0.0)) < 1e-14);
  CHECK(std::abs(p.amp(7) - cplx(1.0 / std::sqrt(2.0), 0.0)) < 1e-14);
}

TEST_CASE("rng substreams are deterministic and distinct") {
  Rng a(RngSeed{21, 0});
  Rng b(RngSeed{21, 0});
  CHECK(a.next_u64() == b.next_u64());
  Rng c = Rng(RngSeed{21, 0}).substream(5);
  Rng d = Rng(RngSeed{21, 0}).substream(6);
  CHECK(c.next_u64() != d.next_u64());
  const PureState p1 = random_pure_state(3, RngSeed{22, 0});
  const PureState p2 = random_pure_state(3, RngSeed{22, 0});
  CHECK((p1.amplitudes() - p2.amplitudes()).norm() == 0.0);
}

TEST_CASE("haar unitary is unitary") {
  Rng rng(RngSeed{23, 0});
  const Mat u = haar_unitary(4, rng);
  CHECK((u * u.adjoint() - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("state file round trip and renormalization policy") {
  const std::string path = "test_state_roundtrip.json";
  const PureState psi = ghz3();
  save_state_file(psi, path);
  const PureState back = load_state_file(path);
  CHECK(back.num_qubits() == 3);
  CHECK((back.amplitudes() - psi.amplitudes()).norm() < 1e-12);

  // A norm off by 1e-9 is renormalized silently; off by 1e-3 is rejected.
  {
    FILE* f = std::fopen(path.c_str(), "w");
    std::fprintf(f, "{\"num_qubits\":1,\"re\":[%.17g,0.0],\"im\":[0.0,0.0]}",
                 1.0 + 1e-9);
    std::fclose(f);
  }
  CHECK_NOTHROW(load_state_file(path));
  {
    FILE* f = std::fopen(path.c_str(), "w");
    std::fprintf(f, "{\"num_qubits\":1,\"re\":[1.001,0.0],\"im\":[0.0,0.0]}");
    std::fclose(f);
  }
  CHECK_THROWS_AS(load_state_file(path), std::runtime_error);
  std::remove(path.c_str());
}
