#include "spdmean/kernels.hpp"

namespace spdmean::kernels::detail {
namespace {

void mobius_mix(const MobiusFamily& f, std::span<const double> x, std::span<double> out) {
  const std::size_t nodes = f.w.size();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    double acc = 0.0;
    for (std::size_t j = 0; j < nodes; ++j) {
      acc += f.w[j] * (f.p[j] * xi + f.q[j]) / (f.r[j] * xi + f.v[j]);
    }
    out[i] = acc;
  }
}

void inv_affine(std::span<const double> r, std::span<const double> v, double x,
                std::span<double> out) {
  for (std::size_t j = 0; j < r.size(); ++j) out[j] = 1.0 / (r[j] * x + v[j]);
}

void weighted_gram(std::span<const double> a, std::span<const double> w, std::size_t rows,
                   std::size_t cols, std::span<double> out) {
  for (std::size_t i = 0; i < cols; ++i) {
    const double* ai = a.data() + i * rows;
    for (std::size_t k = i; k < cols; ++k) {
      const double* ak = a.data() + k * rows;
      double acc = 0.0;
      for (std::size_t j = 0; j < rows; ++j) acc += w[j] * ai[j] * ak[j];
      out[i * cols + k] = acc;
      out[k * cols + i] = acc;
    }
  }
}

void spectral_compose(std::span<const double> q, std::span<const double> d, std::size_t n,
                      std::span<double> out) {
  for (std::size_t k = 0; k < n; ++k) {
    double* col = out.data() + k * n;
    for (std::size_t i = 0; i < n; ++i) col[i] = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double* qj = q.data() + j * n;
      const double c = d[j] * qj[k];
      for (std::size_t i = 0; i < n; ++i) col[i] += c * qj[i];
    }
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable t{Isa::kScalar, &mobius_mix, &inv_affine, &weighted_gram,
                             &spectral_compose};
  return t;
}

}  // namespace spdmean::kernels::detail
