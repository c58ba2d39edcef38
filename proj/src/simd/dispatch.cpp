#include <atomic>

#include "fredlab/simd/kernels.hpp"

namespace fredlab::simd {

namespace detail {
#if !defined(FREDLAB_HAVE_AVX2)
const KernelTable* avx2_table() noexcept { return nullptr; }
#endif
#if !defined(FREDLAB_HAVE_NEON)
const KernelTable* neon_table() noexcept { return nullptr; }
#endif
}  // namespace detail

namespace {

bool cpu_supports(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(FREDLAB_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::neon:
#if defined(FREDLAB_HAVE_NEON)
      return true;  // Advanced SIMD is mandatory on aarch64
#else
      return false;
#endif
  }
  return false;
}

const KernelTable* table_pointer(Isa isa) noexcept {
  switch (isa) {
    case Isa::avx2:
      return detail::avx2_table();
    case Isa::neon:
      return detail::neon_table();
    case Isa::scalar:
      break;
  }
  return &detail::scalar_table();
}

std::atomic<const KernelTable*> g_override{nullptr};

}  // namespace

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) noexcept { return table_pointer(isa) != nullptr && cpu_supports(isa); }

Isa detect_isa() noexcept {
  if (isa_available(Isa::avx2)) return Isa::avx2;
  if (isa_available(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

const KernelTable& kernels_for(Isa isa) noexcept {
  if (!isa_available(isa)) return detail::scalar_table();
  return *table_pointer(isa);
}

const KernelTable& kernels() noexcept {
  if (const KernelTable* forced = g_override.load(std::memory_order_acquire)) return *forced;
  static const KernelTable& detected = kernels_for(detect_isa());
  return detected;
}

void set_isa_override(std::optional<Isa> isa) noexcept {
  g_override.store(isa ? &kernels_for(*isa) : nullptr, std::memory_order_release);
}

}  // namespace fredlab::simd
