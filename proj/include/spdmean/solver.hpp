#pragma once

// Induced means L_t(mu), the lambda (generalized Karcher) mean and matrix
// power means as fixed points of contractive mean iterations.

#include <span>
#include <vector>

#include "spdmean/matrix.hpp"
#include "spdmean/measures.hpp"

namespace spdmean {

struct SolverConfig {
  enum class Method { kNewton, kBanach };

  double fp_tol = 1e-12;      // Thompson step threshold
  int max_iters = 10000;      // per fixed-point solve
  double t_factor = 0.5;      // geometric t-schedule for the lambda net
  double t_start = 0.5;
  double lambda_tol = 1e-9;   // Thompson distance between successive L_t
  double residual_tol = 1e-8;
  Method method = Method::kNewton;
  bool refine_limit = true;   // finish lambda_mean with a direct solve at t = 0

  /// Throws DomainError on invalid fields.
  void validate() const;
};

struct TracePoint {
  double t;
  int iterations;
};

struct SolverReport {
  SpdMatrix mean;
  int iterations = 0;
  double final_step = 0.0;
  double residual_norm = 0.0;
  std::vector<TracePoint> t_trace;
  int iterations_bound = -1;  // a priori Banach bound, -1 when not applicable
};

/// int X^{1/2} ell_{t + s(1-t)}(X^{-1/2} A X^{-1/2}) X^{1/2} dmu; the t = 0
/// case is the generalized Karcher residual. t in [0, 1].
SymMatrix shifted_residual(const SpdMatrix& x, double t, const PMeasure& mu);

SymMatrix karcher_residual(const SpdMatrix& x, const PMeasure& mu);

/// int M_{s,t}(X, A) dmu(s, A) with M_{s,t}(X, A) = X^{1/2} f_{s,t}(X^{-1/2} A X^{-1/2}) X^{1/2}.
/// Equals X + t * shifted_residual(X, t, mu).
SpdMatrix iteration_map(const SpdMatrix& x, double t, const PMeasure& mu);

/// L_t(mu) for t in (0, 1], started from the weighted arithmetic mean.
SolverReport induced_mean(double t, const PMeasure& mu, const SolverConfig& cfg = {});

/// As above from a caller-supplied starting point.
SolverReport induced_mean(double t, const PMeasure& mu, const SpdMatrix& x0, const SolverConfig& cfg);

/// Solution of sum_i w_i X #_t A_i = X by direct iteration, t in (0, 1].
SolverReport power_mean(double t, std::span<const WeightedMatrix> sigma, const SolverConfig& cfg = {});

/// Lambda(mu) as the limit of L_t along t_start * t_factor^l.
SolverReport lambda_mean(const PMeasure& mu, const SolverConfig& cfg = {});

/// weighted_harm(atoms) <= X <= weighted_arith(atoms), tolerance 1e-9.
bool sandwich_check(const SpdMatrix& x, const PMeasure& mu);

}  // namespace spdmean
