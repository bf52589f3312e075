#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "spdmean/kernels.hpp"

namespace spdmean::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(SPDMEAN_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* initial_table() {
  const char* env = std::getenv("SPDMEAN_ISA");
  if (env != nullptr) {
    const std::string want(env);
    if (want == "scalar") return &detail::scalar_table();
    if (want == "avx2" && isa_supported(Isa::kAvx2)) return &table(Isa::kAvx2);
  }
  return isa_supported(Isa::kAvx2) ? &table(Isa::kAvx2) : &detail::scalar_table();
}

std::atomic<const KernelTable*>& slot() {
  static std::atomic<const KernelTable*> current{initial_table()};
  return current;
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
  }
  return "unknown";
}

bool isa_supported(Isa isa) {
  if (isa == Isa::kScalar) return true;
  static const bool avx2 = cpu_has_avx2();
  return avx2;
}

const KernelTable& table(Isa isa) {
  if (!isa_supported(isa)) {
    throw std::invalid_argument("kernel ISA not supported on this CPU: " + std::string(to_string(isa)));
  }
#if defined(SPDMEAN_HAVE_AVX2_TU)
  if (isa == Isa::kAvx2) return detail::avx2_table();
#endif
  return detail::scalar_table();
}

const KernelTable& active() { return *slot().load(std::memory_order_acquire); }

void set_active_isa(Isa isa) { slot().store(&table(isa), std::memory_order_release); }

}  // namespace spdmean::kernels
