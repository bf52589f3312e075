#pragma once

// Seeded generators for test inputs.

#include <cstdint>
#include <random>
#include <vector>

#include "spdmean/matrix.hpp"
#include "spdmean/measures.hpp"

namespace spdmean {

using Rng = std::mt19937_64;

/// Q diag(d) Q^T with Q Haar-orthogonal and d log-uniform in [lo, hi].
SpdMatrix random_spd(Rng& rng, int n, double lo = 1e-2, double hi = 1e2);

SymMatrix random_symmetric(Rng& rng, int n);

/// Random positive semidefinite matrix of rank at most `rank`, scaled by `scale`.
SymMatrix random_psd(Rng& rng, int n, int rank, double scale = 1.0);

/// Q1 diag(d) Q2 with d log-uniform in [0.1, 10].
Dense random_invertible(Rng& rng, int n);

Dense random_orthogonal(Rng& rng, int n);

/// Positive weights summing to one.
std::vector<double> random_weights(Rng& rng, int k);

std::vector<WeightedMatrix> random_sigma(Rng& rng, int n, int k);

double uniform(Rng& rng, double lo, double hi);

}  // namespace spdmean
