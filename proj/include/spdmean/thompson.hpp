#pragma once

// Thompson part metric and explicit contraction coefficients of the mean
// iterations on Thompson balls.

#include "spdmean/matrix.hpp"

namespace spdmean {

/// inf{alpha : A <= alpha B} = lambda_max(B^{-1/2} A B^{-1/2}).
double m_ratio(const SpdMatrix& a, const SpdMatrix& b);

/// max(log M(A/B), log M(B/A)); clamped at zero.
double d_inf(const SpdMatrix& a, const SpdMatrix& b);

/// Contraction coefficient of X -> a I + b X on a ball of radius r.
double contraction_coeff_arith(double a, double b, double r);

/// Contraction coefficient of X -> M_{s,t}(X, A) on the ball of radius r about A.
double contraction_coeff_mst(double s, double t, double r);

/// Upper bound of contraction_coeff_mst over all s in [0, 1].
double contraction_coeff_uniform(double t, double r);

}  // namespace spdmean
