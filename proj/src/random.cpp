#include "spdmean/random.hpp"

#include <cmath>

namespace spdmean {
namespace {

Dense gaussian(Rng& rng, int rows, int cols) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Dense g(rows, cols);
  // Column-major fill for a fixed draw order.
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) g(i, j) = nd(rng);
  }
  return g;
}

}  // namespace

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Dense random_orthogonal(Rng& rng, int n) {
  const Dense g = gaussian(rng, n, n);
  Eigen::HouseholderQR<Dense> qr(g);
  Dense q = qr.householderQ() * Dense::Identity(n, n);
  const Dense r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return q;
}

SpdMatrix random_spd(Rng& rng, int n, double lo, double hi) {
  const Dense q = random_orthogonal(rng, n);
  std::vector<double> d(static_cast<std::size_t>(n));
  for (double& v : d) v = std::exp(uniform(rng, std::log(lo), std::log(hi)));
  return SpdMatrix::from_spectrum(q, d);
}

SymMatrix random_symmetric(Rng& rng, int n) { return SymMatrix(gaussian(rng, n, n)); }

SymMatrix random_psd(Rng& rng, int n, int rank, double scale) {
  const Dense g = gaussian(rng, n, rank);
  return SymMatrix(scale * g * g.transpose() / static_cast<double>(rank));
}

Dense random_invertible(Rng& rng, int n) {
  const Dense q1 = random_orthogonal(rng, n);
  const Dense q2 = random_orthogonal(rng, n);
  Vector d(n);
  for (int i = 0; i < n; ++i) d(i) = std::exp(uniform(rng, std::log(0.1), std::log(10.0)));
  return q1 * d.asDiagonal() * q2;
}

std::vector<double> random_weights(Rng& rng, int k) {
  std::vector<double> w(static_cast<std::size_t>(k));
  double total = 0.0;
  for (double& v : w) {
    v = uniform(rng, 0.1, 1.0);
    total += v;
  }
  for (double& v : w) v /= total;
  double rest = 1.0;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) rest -= w[i];
  w.back() = rest;
  return w;
}

std::vector<WeightedMatrix> random_sigma(Rng& rng, int n, int k) {
  const std::vector<double> w = random_weights(rng, k);
  std::vector<WeightedMatrix> out;
  out.reserve(w.size());
  for (double wi : w) out.push_back({wi, random_spd(rng, n)});
  return out;
}

}  // namespace spdmean
