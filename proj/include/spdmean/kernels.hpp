#pragma once

// Data-parallel inner loops of the library. Every kernel has a portable scalar
// reference implementation and, on x86-64, an AVX2+FMA variant. The variant is
// picked once at startup from the CPU feature bits; SPDMEAN_ISA=scalar|avx2 in
// the environment overrides the choice.

#include <cstddef>
#include <span>
#include <string_view>

namespace spdmean::kernels {

enum class Isa { kScalar, kAvx2 };

std::string_view to_string(Isa isa);

/// Coefficients of a weighted family of Moebius maps
///   x -> sum_j w[j] * (p[j] * x + q[j]) / (r[j] * x + v[j]).
/// All spans share one length. Denominators must stay positive for x > 0.
struct MobiusFamily {
  std::span<const double> p;
  std::span<const double> q;
  std::span<const double> r;
  std::span<const double> v;
  std::span<const double> w;
};

struct KernelTable {
  Isa isa;

  /// out[i] = sum_j w[j] (p[j] x[i] + q[j]) / (r[j] x[i] + v[j])
  void (*mobius_mix)(const MobiusFamily& family, std::span<const double> x, std::span<double> out);

  /// out[j] = 1 / (r[j] * x + v[j])
  void (*inv_affine)(std::span<const double> r, std::span<const double> v, double x,
                     std::span<double> out);

  /// Weighted Gram matrix of the columns of a (rows x cols, column-major):
  /// out(i, k) = sum_j w[j] a(j, i) a(j, k); out is cols x cols column-major.
  void (*weighted_gram)(std::span<const double> a, std::span<const double> w, std::size_t rows,
                        std::size_t cols, std::span<double> out);

  /// out = Q diag(d) Q^T for a column-major n x n Q; out is n x n column-major.
  void (*spectral_compose)(std::span<const double> q, std::span<const double> d, std::size_t n,
                           std::span<double> out);
};

bool isa_supported(Isa isa);

/// Table for a specific ISA. Throws std::invalid_argument if unsupported.
const KernelTable& table(Isa isa);

/// Table used by the numerical modules.
const KernelTable& active();

/// Switch the active table; throws if the ISA is not supported on this CPU.
void set_active_isa(Isa isa);

namespace detail {
const KernelTable& scalar_table();
#if defined(SPDMEAN_HAVE_AVX2_TU)
const KernelTable& avx2_table();
#endif
}  // namespace detail

}  // namespace spdmean::kernels
