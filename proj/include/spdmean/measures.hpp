#pragma once

// Finitely supported probability measures on [0, 1] x P:
//   mu = sum_k w_k (nu_k x delta_{A_k}).

#include <functional>
#include <span>
#include <vector>

#include "spdmean/matrix.hpp"
#include "spdmean/omf.hpp"

namespace spdmean {

struct Atom {
  double weight;
  SpdMatrix matrix;
  SMeasure nu;
};

class PMeasure {
 public:
  /// Weights positive summing to one within 1e-12 (MeasureError), shared
  /// dimension (ShapeError), nonempty (EmptyInput).
  explicit PMeasure(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  int dim() const { return atoms_.front().matrix.dim(); }

  /// The matrix marginal as (weight, matrix) pairs.
  std::vector<WeightedMatrix> sigma() const;

 private:
  std::vector<Atom> atoms_;
};

PMeasure product_measure(const SMeasure& nu, std::span<const WeightedMatrix> sigma);

using Integrand = std::function<SymMatrix(double s, const SpdMatrix& a)>;

/// sum_k w_k int G(s, A_k) dnu_k(s), summed in atom order then node order.
SymMatrix integrate(const PMeasure& mu, const Integrand& g);

/// Atoms (w_k, X A_k X^T, nu_k).
PMeasure congruence_measure(const Dense& x, const PMeasure& mu);

/// Throws Incomparable unless both measures have the same atom count, weights
/// and s-marginals position by position.
void require_matched(const PMeasure& mu1, const PMeasure& mu2);

/// Matched atoms (w_k, (1 - u) A_k + u B_k, nu_k).
PMeasure interpolate(const PMeasure& mu1, const PMeasure& mu2, double u);

/// Atom-by-atom Loewner comparison of matched measures.
bool measure_leq(const PMeasure& mu1, const PMeasure& mu2);

}  // namespace spdmean
