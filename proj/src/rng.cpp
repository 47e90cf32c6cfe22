#include "polyq/rng.hpp"

#include <cmath>
#include <numbers>

namespace polyq {

void Rng::reseed() {
  // seed_seq consumes 32-bit words; split each path element into lo/hi.
  std::vector<std::uint32_t> words;
  words.reserve(path_.size() * 2);
  for (std::uint64_t v : path_) {
    words.push_back(static_cast<std::uint32_t>(v));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  gen_.seed(seq);
  has_spare_ = false;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

Mat haar_unitary(int n, Rng& rng) {
  Mat g(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) g(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ() * Mat::Identity(n, n);
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const cplx d = r(j, j);
    const double ad = std::abs(d);
    q.col(j) *= (ad > 0.0) ? d / ad : cplx(1.0, 0.0);
  }
  return q;
}

}  // namespace polyq
