#pragma once

// Vector kernels behind every dense inner loop of the library.
//
// Each kernel has a portable scalar reference implementation and, where the
// target supports it, an AVX2+FMA (x86-64) or NEON (aarch64) variant. The
// variant is picked once at runtime from CPU feature bits; tests can force a
// particular table to check the variants against the reference.

#include <cstddef>
#include <optional>
#include <string_view>

namespace fredlab::simd {

enum class Isa { scalar, avx2, neon };

std::string_view to_string(Isa isa) noexcept;

struct KernelTable {
  Isa isa;
  // sum_i x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // (x, y) <- (c x - s y, s x + c y), a plane rotation applied to two rows
  void (*rot)(double* x, double* y, std::size_t n, double c, double s);
  // x[i] *= alpha
  void (*scal)(double alpha, double* x, std::size_t n);
};

/// Best ISA the running CPU supports among those compiled in.
Isa detect_isa() noexcept;

/// True when the table for `isa` was compiled in and the CPU can run it.
bool isa_available(Isa isa) noexcept;

/// Table in use: the override when set, otherwise the detected one.
const KernelTable& kernels() noexcept;

/// Table for a specific ISA; falls back to scalar when unavailable.
const KernelTable& kernels_for(Isa isa) noexcept;

/// Pin the dispatch to one ISA (nullopt restores detection). Not meant to be
/// flipped while other threads are inside kernels.
void set_isa_override(std::optional<Isa> isa) noexcept;

namespace detail {
const KernelTable& scalar_table() noexcept;
const KernelTable* avx2_table() noexcept;  // nullptr when not compiled in
const KernelTable* neon_table() noexcept;  // nullptr when not compiled in
}  // namespace detail

}  // namespace fredlab::simd
