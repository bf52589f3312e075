#pragma once

// Symmetric and symmetric positive definite matrix value types, spectral
// functional calculus, the weighted geometric mean and the Loewner order.

#include <Eigen/Dense>
#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "spdmean/errors.hpp"

namespace spdmean {

using Dense = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Default scaled tolerance for Loewner-order comparisons.
inline constexpr double kLoewnerTol = 1e-10;

/// Dense real symmetric matrix. Construction symmetrizes (A + A^T) / 2, so
/// values are exactly symmetric. Immutable once built.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(const Dense& m);

  static SymMatrix zero(int n);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Dense& dense() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }
  double frobenius() const { return m_.norm(); }
  double max_abs() const { return m_.cwiseAbs().maxCoeff(); }

 protected:
  struct Trusted {};
  SymMatrix(Dense m, Trusted) : m_(std::move(m)) {}

  Dense m_;

  friend SymMatrix operator+(const SymMatrix&, const SymMatrix&);
  friend SymMatrix operator-(const SymMatrix&, const SymMatrix&);
  friend SymMatrix operator*(double, const SymMatrix&);
  friend SymMatrix operator-(const SymMatrix&);
};

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b);
SymMatrix operator-(const SymMatrix& a, const SymMatrix& b);
SymMatrix operator*(double c, const SymMatrix& a);
SymMatrix operator-(const SymMatrix& a);

/// Point of the open cone of symmetric positive definite matrices.
/// Construction symmetrizes, then requires lambda_min > dim * 1e-14 * lambda_max.
class SpdMatrix : public SymMatrix {
 public:
  SpdMatrix() = default;
  explicit SpdMatrix(const Dense& m);

  static SpdMatrix identity(int n);
  static SpdMatrix diagonal(std::span<const double> diag);

  /// Q diag(values) Q^T; values must be strictly positive.
  static SpdMatrix from_spectrum(const Dense& q, std::span<const double> values);

 private:
  SpdMatrix(Dense m, Trusted t) : SymMatrix(std::move(m), t) {}
  friend SpdMatrix assume_spd(Dense m);
};

/// Wraps a matrix that is SPD by construction (sums of SPD terms with positive
/// weights, congruences of SPD matrices). Symmetrizes but skips the
/// eigenvalue test. Internal use by the numerical modules.
SpdMatrix assume_spd(Dense m);

struct SpectralDecomposition {
  Vector eigenvalues;  // ascending
  Dense eigenvectors;  // orthonormal columns
};

/// Symmetric eigendecomposition; throws NumericalFailure if the solver does not converge.
SpectralDecomposition spectral(const SymMatrix& a);

/// Q diag(values) Q^T through the active compose kernel.
Dense compose(const Dense& q, std::span<const double> values);

/// phi applied through the spectrum. Non-finite phi values raise DomainError.
template <class Fn>
SymMatrix apply_scalar_fn(const SymMatrix& a, Fn&& phi) {
  const SpectralDecomposition sd = spectral(a);
  std::vector<double> values(static_cast<std::size_t>(sd.eigenvalues.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double lam = sd.eigenvalues(static_cast<Eigen::Index>(i));
    values[i] = phi(lam);
    if (!std::isfinite(values[i])) {
      fail(ErrorKind::kDomain, "scalar function undefined at eigenvalue " + std::to_string(lam));
    }
  }
  return SymMatrix(compose(sd.eigenvectors, values));
}

/// Square root and inverse square root from a single eigendecomposition.
struct SpdRoots {
  Dense sqrt;
  Dense inv_sqrt;
};
SpdRoots roots(const SpdMatrix& a);

SpdMatrix sqrt(const SpdMatrix& a);
SpdMatrix inverse(const SpdMatrix& a);
SpdMatrix power(const SpdMatrix& a, double p);
SymMatrix log(const SpdMatrix& a);
SpdMatrix exp(const SymMatrix& a);

/// Eigenvalues of B^{-1/2} A B^{-1/2} (equivalently of B^{-1} A), ascending.
Vector relative_eigenvalues(const SpdMatrix& a, const SpdMatrix& b);

/// C A C^T. C must be square, matching and numerically invertible
/// (SingularTransform otherwise).
SpdMatrix congruence(const Dense& c, const SpdMatrix& a);

/// C S C^T without invertibility checks.
SymMatrix congruence(const Dense& c, const SymMatrix& s);

/// A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}; t = 0 gives A and t = 1 gives B.
SpdMatrix geom_mean_t(const SpdMatrix& a, const SpdMatrix& b, double t);

/// True iff lambda_min(B - A) >= -tol * (1 + ||B - A||_F).
bool loewner_leq(const SymMatrix& a, const SymMatrix& b, double tol = kLoewnerTol);

struct WeightedMatrix {
  double weight;
  SpdMatrix matrix;
};

/// sum_i w_i A_i. Weights must be positive and sum to one.
SpdMatrix weighted_arith(std::span<const WeightedMatrix> pairs);

/// (sum_i w_i A_i^{-1})^{-1}. Weights must be positive and sum to one.
SpdMatrix weighted_harm(std::span<const WeightedMatrix> pairs);

void require_same_dim(const SymMatrix& a, const SymMatrix& b);

}  // namespace spdmean
