#include "spdmean/matrix.hpp"

#include <algorithm>
#include <string>

#include "spdmean/kernels.hpp"

namespace spdmean {
namespace {

Dense symmetrized(const Dense& m) { return 0.5 * (m + m.transpose()); }

void require_square_finite(const Dense& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    fail(ErrorKind::kShape, "expected a non-empty square matrix, got " + std::to_string(m.rows()) +
                                "x" + std::to_string(m.cols()));
  }
  if (!m.allFinite()) fail(ErrorKind::kDomain, "matrix has non-finite entries");
}

void require_weights(std::span<const WeightedMatrix> pairs) {
  if (pairs.empty()) fail(ErrorKind::kEmptyInput, "weighted mean of an empty list");
  double total = 0.0;
  for (const auto& p : pairs) {
    if (!(p.weight > 0.0)) fail(ErrorKind::kDomain, "weights must be positive");
    require_same_dim(pairs.front().matrix, p.matrix);
    total += p.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    fail(ErrorKind::kDomain, "weights must sum to one (sum = " + std::to_string(total) + ")");
  }
}

}  // namespace

SymMatrix::SymMatrix(const Dense& m) {
  require_square_finite(m);
  m_ = symmetrized(m);
}

SymMatrix SymMatrix::zero(int n) { return SymMatrix(Dense::Zero(n, n), Trusted{}); }

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) {
  require_same_dim(a, b);
  return SymMatrix(a.m_ + b.m_, SymMatrix::Trusted{});
}

SymMatrix operator-(const SymMatrix& a, const SymMatrix& b) {
  require_same_dim(a, b);
  return SymMatrix(a.m_ - b.m_, SymMatrix::Trusted{});
}

SymMatrix operator*(double c, const SymMatrix& a) { return SymMatrix(c * a.m_, SymMatrix::Trusted{}); }

SymMatrix operator-(const SymMatrix& a) { return SymMatrix(-a.m_, SymMatrix::Trusted{}); }

SpdMatrix::SpdMatrix(const Dense& m) {
  require_square_finite(m);
  m_ = symmetrized(m);
  Eigen::SelfAdjointEigenSolver<Dense> es(m_, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) fail(ErrorKind::kNumericalFailure, "eigensolver did not converge");
  const double lo = es.eigenvalues()(0);
  const double hi = es.eigenvalues()(es.eigenvalues().size() - 1);
  if (!(lo > static_cast<double>(m_.rows()) * 1e-14 * hi)) {
    fail(ErrorKind::kDomain, "matrix is not positive definite (lambda_min = " + std::to_string(lo) +
                                 ", lambda_max = " + std::to_string(hi) + ")");
  }
}

SpdMatrix SpdMatrix::identity(int n) { return SpdMatrix(Dense::Identity(n, n), Trusted{}); }

SpdMatrix SpdMatrix::diagonal(std::span<const double> diag) {
  Vector d(static_cast<Eigen::Index>(diag.size()));
  for (std::size_t i = 0; i < diag.size(); ++i) d(static_cast<Eigen::Index>(i)) = diag[i];
  return SpdMatrix(Dense(d.asDiagonal()));
}

SpdMatrix SpdMatrix::from_spectrum(const Dense& q, std::span<const double> values) {
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) fail(ErrorKind::kDomain, "spectrum must be positive and finite");
  }
  return assume_spd(compose(q, values));
}

SpdMatrix assume_spd(Dense m) { return SpdMatrix(symmetrized(m), SymMatrix::Trusted{}); }

void require_same_dim(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) {
    fail(ErrorKind::kShape, "dimension mismatch: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
  }
}

SpectralDecomposition spectral(const SymMatrix& a) {
  Eigen::SelfAdjointEigenSolver<Dense> es(a.dense());
  if (es.info() != Eigen::Success) fail(ErrorKind::kNumericalFailure, "eigensolver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

Dense compose(const Dense& q, std::span<const double> values) {
  const auto n = static_cast<std::size_t>(q.rows());
  Dense out(q.rows(), q.cols());
  kernels::active().spectral_compose({q.data(), n * n}, values, n, {out.data(), n * n});
  return out;
}

SpdRoots roots(const SpdMatrix& a) {
  const SpectralDecomposition sd = spectral(a);
  const auto n = static_cast<std::size_t>(a.dim());
  std::vector<double> s(n), si(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double lam = sd.eigenvalues(static_cast<Eigen::Index>(i));
    if (!(lam > 0.0)) fail(ErrorKind::kNumericalFailure, "lost positive definiteness");
    s[i] = std::sqrt(lam);
    si[i] = 1.0 / s[i];
  }
  return {symmetrized(compose(sd.eigenvectors, s)), symmetrized(compose(sd.eigenvectors, si))};
}

SpdMatrix power(const SpdMatrix& a, double p) {
  const SpectralDecomposition sd = spectral(a);
  std::vector<double> v(static_cast<std::size_t>(a.dim()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double lam = sd.eigenvalues(static_cast<Eigen::Index>(i));
    if (!(lam > 0.0)) fail(ErrorKind::kNumericalFailure, "lost positive definiteness");
    v[i] = std::pow(lam, p);
  }
  return SpdMatrix::from_spectrum(sd.eigenvectors, v);
}

SpdMatrix sqrt(const SpdMatrix& a) { return power(a, 0.5); }

SpdMatrix inverse(const SpdMatrix& a) { return power(a, -1.0); }

SymMatrix log(const SpdMatrix& a) {
  return apply_scalar_fn(a, [](double x) { return std::log(x); });
}

SpdMatrix exp(const SymMatrix& a) {
  const SpectralDecomposition sd = spectral(a);
  std::vector<double> v(static_cast<std::size_t>(a.dim()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::exp(sd.eigenvalues(static_cast<Eigen::Index>(i)));
  return SpdMatrix::from_spectrum(sd.eigenvectors, v);
}

Vector relative_eigenvalues(const SpdMatrix& a, const SpdMatrix& b) {
  require_same_dim(a, b);
  // Squared singular values of B^{-1/2} L_A with A = L_A L_A^T; one-sided Jacobi keeps
  // small relative eigenvalues accurate to working precision.
  const Eigen::LLT<Dense> llt(a.dense());
  if (llt.info() != Eigen::Success) fail(ErrorKind::kNumericalFailure, "Cholesky factorization failed");
  const Dense g = roots(b).inv_sqrt * Dense(llt.matrixL());
  const Eigen::JacobiSVD<Dense> svd(g);
  Vector ev = svd.singularValues().cwiseAbs2();
  std::sort(ev.data(), ev.data() + ev.size());
  return ev;
}

SpdMatrix congruence(const Dense& c, const SpdMatrix& a) {
  if (c.rows() != c.cols() || c.rows() != a.dim()) {
    fail(ErrorKind::kShape, "congruence transform must be square and match the matrix dimension");
  }
  if (!c.allFinite()) fail(ErrorKind::kSingularTransform, "transform has non-finite entries");
  Eigen::JacobiSVD<Dense> svd(c);
  const Vector& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (!(smax > 0.0) || smin <= 1e-14 * smax * static_cast<double>(c.rows())) {
    fail(ErrorKind::kSingularTransform, "transform is numerically singular");
  }
  return assume_spd(c * a.dense() * c.transpose());
}

SymMatrix congruence(const Dense& c, const SymMatrix& s) {
  if (c.cols() != s.dim()) fail(ErrorKind::kShape, "congruence dimension mismatch");
  return SymMatrix(c * s.dense() * c.transpose());
}

SpdMatrix geom_mean_t(const SpdMatrix& a, const SpdMatrix& b, double t) {
  require_same_dim(a, b);
  if (!(t >= 0.0 && t <= 1.0)) fail(ErrorKind::kDomain, "geometric mean weight must lie in [0, 1]");
  if (t == 0.0) return a;
  if (t == 1.0) return b;
  const SpdRoots ra = roots(a);
  const SpectralDecomposition sd = spectral(SymMatrix(ra.inv_sqrt * b.dense() * ra.inv_sqrt));
  std::vector<double> v(static_cast<std::size_t>(a.dim()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = std::pow(std::max(sd.eigenvalues(static_cast<Eigen::Index>(i)), 0.0), t);
  }
  return assume_spd(ra.sqrt * compose(sd.eigenvectors, v) * ra.sqrt);
}

bool loewner_leq(const SymMatrix& a, const SymMatrix& b, double tol) {
  require_same_dim(a, b);
  const Dense diff = b.dense() - a.dense();
  Eigen::SelfAdjointEigenSolver<Dense> es(diff, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) fail(ErrorKind::kNumericalFailure, "eigensolver did not converge");
  return es.eigenvalues()(0) >= -tol * (1.0 + diff.norm());
}

SpdMatrix weighted_arith(std::span<const WeightedMatrix> pairs) {
  require_weights(pairs);
  Dense acc = Dense::Zero(pairs.front().matrix.dim(), pairs.front().matrix.dim());
  for (const auto& p : pairs) acc += p.weight * p.matrix.dense();
  return assume_spd(std::move(acc));
}

SpdMatrix weighted_harm(std::span<const WeightedMatrix> pairs) {
  require_weights(pairs);
  Dense acc = Dense::Zero(pairs.front().matrix.dim(), pairs.front().matrix.dim());
  for (const auto& p : pairs) acc += p.weight * inverse(p.matrix).dense();
  return inverse(assume_spd(std::move(acc)));
}

}  // namespace spdmean
