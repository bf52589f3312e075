#pragma once

#include <vector>

namespace spdmean {

/// Discrete rule on [0, 1]: sum_j w[j] g(s[j]). sc[j] = 1 - s[j], stored
/// separately so nodes crowding s = 1 keep full relative accuracy.
struct QuadratureRule {
  std::vector<double> s;
  std::vector<double> sc;
  std::vector<double> w;
  double mass = 0.0;  // sum of the weights before normalization

  std::size_t size() const { return w.size(); }

  /// The rule for the image measure under s -> 1 - s.
  QuadratureRule mirrored() const;
};

/// Double-exponential (tanh-sinh) rule for the density
///   s^a (1 - s)^{-a} sin(a pi) / (a pi)   (a = 0 gives the uniform density)
/// with a in (-1, 1). Weights are normalized to total mass one; `mass` keeps
/// the raw quadrature of the density.
QuadratureRule power_density_rule(double a, int nodes);

/// Gauss-Legendre nodes and weights on [0, 1].
QuadratureRule gauss_legendre(int nodes);

}  // namespace spdmean
