#pragma once

// Log-determinant divergences
//   LD^s(X, A) = tr{log[(1 - s) A + s X] - log(X #_{1-s} A)} / (s (1 - s)),
// their integral against a measure, and a Riemannian gradient-descent
// minimizer of that integral.

#include <cstdint>
#include <string>
#include <vector>

#include "spdmean/matrix.hpp"
#include "spdmean/measures.hpp"
#include "spdmean/solver.hpp"

namespace spdmean {

struct RgdConfig {
  double step0 = 1.0;
  double armijo_c = 1e-4;
  double backtrack = 0.5;
  double grad_tol = 1e-9;
  int max_iters = 5000;

  void validate() const;
};

/// LD^s(X, A); s within 1e-8 of an endpoint uses the closed-form limit.
double ld_s(const SpdMatrix& x, const SpdMatrix& a, double s);

/// sum_k w_k int LD^s(X, A_k) dnu_k(s).
double objective(const SpdMatrix& x, const PMeasure& mu);

/// Gradient under <U, V>_X = tr{X^{-1} U X^{-1} V}; equals -karcher_residual.
SymMatrix riemannian_grad(const SpdMatrix& x, const PMeasure& mu);

/// X^{1/2} exp(X^{-1/2} V X^{-1/2}) X^{1/2}
SpdMatrix exp_map(const SpdMatrix& x, const SymMatrix& v);

/// Gradient descent along exp_map with Armijo backtracking, from the weighted
/// arithmetic mean, until ||grad||_F <= grad_tol.
SolverReport rgd_minimize(const PMeasure& mu, const RgdConfig& cfg = {});

struct ConvexityResult {
  bool passed = true;
  int trials = 0;
  double worst_excess = 0.0;  // largest F(gamma(tau)) - chord seen, floored at 0
  std::vector<std::string> log;  // one line per violation
};

/// Samples geodesics gamma(tau) = G0 #_tau G1 between random SPD endpoints and
/// checks F(gamma(tau)) <= (1 - tau) F(G0) + tau F(G1) at tau = 1/4, 1/2, 3/4,
/// allowing 1e-12 (1 + |chord|) slack.
ConvexityResult geodesic_convexity_check(const PMeasure& mu, int trials, std::uint64_t seed = 7);

}  // namespace spdmean
