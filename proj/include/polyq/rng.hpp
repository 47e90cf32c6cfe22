#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "polyq/common.hpp"

namespace polyq {

// Seed plus stream index. Equal (seed, stream) pairs reproduce identical
// sample sequences on every platform.
struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

// Deterministic random stream with derivable substreams. A substream is
// identified by the full derivation path (seed, stream, child indices...),
// so per-sample and per-restart streams never collide and results do not
// depend on execution order or thread schedule.
//
// normal() uses Box-Muller on top of the raw mt19937_64 output instead of
// std::normal_distribution, whose algorithm is implementation-defined.
class Rng {
 public:
  explicit Rng(RngSeed s) : Rng(std::vector<std::uint64_t>{s.seed, s.stream}) {}

  // Child stream for sample/restart `index`, independent of draws made on *this.
  Rng substream(std::uint64_t index) const {
    std::vector<std::uint64_t> child = path_;
    child.push_back(index);
    return Rng(std::move(child));
  }

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in {0, ..., n-1}. Plain modulo: the bias is ~n/2^64, far below
  // anything observable here, and it keeps the draw count per call fixed.
  std::uint64_t uniform_int(std::uint64_t n) { return next_u64() % n; }

  double normal();

  // Independent standard normals in the real and imaginary parts.
  cplx complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

 private:
  explicit Rng(std::vector<std::uint64_t> path) : path_(std::move(path)) { reseed(); }

  void reseed();

  std::vector<std::uint64_t> path_;
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Haar-distributed n x n unitary: QR of a complex Ginibre matrix with the
// R-diagonal phases folded back into Q.
Mat haar_unitary(int n, Rng& rng);

}  // namespace polyq
