#pragma once

// Shared helpers for the unit tests. Oracles here use Eigen's Schur-based
// matrix functions, independent of the library's spectral route.

#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "spdmean/matrix.hpp"
#include "spdmean/random.hpp"

namespace testing {

using spdmean::Dense;

inline double rel_err(const Dense& got, const Dense& want) {
  return (got - want).norm() / std::max(want.norm(), 1e-300);
}

inline Dense oracle_sqrt(const Dense& a) { return a.sqrt(); }

inline Dense oracle_pow(const Dense& a, double p) { return a.pow(p); }

inline Dense oracle_log(const Dense& a) { return a.log(); }

inline Dense oracle_geom_mean(const Dense& a, const Dense& b, double t) {
  const Dense ra = a.sqrt();
  const Dense ria = ra.inverse();
  const Dense inner = ria * b * ria;
  return ra * Dense(0.5 * (inner + inner.transpose())).pow(t) * ra;
}

/// Thompson distance through the generalized eigenproblem A v = mu B v.
inline double oracle_thompson(const Dense& a, const Dense& b) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Dense> es(a, b, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return std::max(std::log(ev(ev.size() - 1)), -std::log(ev(0)));
}

}  // namespace testing
