#include <immintrin.h>

#include "spdmean/kernels.hpp"

namespace spdmean::kernels::detail {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

void mobius_mix(const MobiusFamily& f, std::span<const double> x, std::span<double> out) {
  const std::size_t nodes = f.w.size();
  const std::size_t body = nodes & ~std::size_t{3};
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    const __m256d vx = _mm256_set1_pd(xi);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t j = 0; j < body; j += 4) {
      const __m256d num = _mm256_fmadd_pd(_mm256_loadu_pd(&f.p[j]), vx, _mm256_loadu_pd(&f.q[j]));
      const __m256d den = _mm256_fmadd_pd(_mm256_loadu_pd(&f.r[j]), vx, _mm256_loadu_pd(&f.v[j]));
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(&f.w[j]), _mm256_div_pd(num, den), acc);
    }
    double tail = hsum(acc);
    for (std::size_t j = body; j < nodes; ++j) {
      tail += f.w[j] * (f.p[j] * xi + f.q[j]) / (f.r[j] * xi + f.v[j]);
    }
    out[i] = tail;
  }
}

void inv_affine(std::span<const double> r, std::span<const double> v, double x,
                std::span<double> out) {
  const std::size_t n = r.size();
  const std::size_t body = n & ~std::size_t{3};
  const __m256d vx = _mm256_set1_pd(x);
  const __m256d one = _mm256_set1_pd(1.0);
  for (std::size_t j = 0; j < body; j += 4) {
    const __m256d den = _mm256_fmadd_pd(_mm256_loadu_pd(&r[j]), vx, _mm256_loadu_pd(&v[j]));
    _mm256_storeu_pd(&out[j], _mm256_div_pd(one, den));
  }
  for (std::size_t j = body; j < n; ++j) out[j] = 1.0 / (r[j] * x + v[j]);
}

void weighted_gram(std::span<const double> a, std::span<const double> w, std::size_t rows,
                   std::size_t cols, std::span<double> out) {
  const std::size_t body = rows & ~std::size_t{3};
  for (std::size_t i = 0; i < cols; ++i) {
    const double* ai = a.data() + i * rows;
    for (std::size_t k = i; k < cols; ++k) {
      const double* ak = a.data() + k * rows;
      __m256d acc = _mm256_setzero_pd();
      for (std::size_t j = 0; j < body; j += 4) {
        const __m256d wa = _mm256_mul_pd(_mm256_loadu_pd(&w[j]), _mm256_loadu_pd(ai + j));
        acc = _mm256_fmadd_pd(wa, _mm256_loadu_pd(ak + j), acc);
      }
      double s = hsum(acc);
      for (std::size_t j = body; j < rows; ++j) s += w[j] * ai[j] * ak[j];
      out[i * cols + k] = s;
      out[k * cols + i] = s;
    }
  }
}

void spectral_compose(std::span<const double> q, std::span<const double> d, std::size_t n,
                      std::span<double> out) {
  const std::size_t body = n & ~std::size_t{3};
  for (std::size_t k = 0; k < n; ++k) {
    double* col = out.data() + k * n;
    for (std::size_t i = 0; i < n; ++i) col[i] = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double* qj = q.data() + j * n;
      const double c = d[j] * qj[k];
      const __m256d vc = _mm256_set1_pd(c);
      for (std::size_t i = 0; i < body; i += 4) {
        _mm256_storeu_pd(col + i,
                         _mm256_fmadd_pd(vc, _mm256_loadu_pd(qj + i), _mm256_loadu_pd(col + i)));
      }
      for (std::size_t i = body; i < n; ++i) col[i] += c * qj[i];
    }
  }
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable t{Isa::kAvx2, &mobius_mix, &inv_affine, &weighted_gram,
                             &spectral_compose};
  return t;
}

}  // namespace spdmean::kernels::detail
