// Runtime-dispatched kernels for the data-parallel inner loops: batched
// permutation composition (closure expansion, centralizer scans) and packed
// word ops.  Scalar reference implementations are always available; SSSE3 and
// AVX2 variants are selected at startup when the CPU supports them.
// OBSTR_KERNEL=scalar|ssse3|avx2 forces a variant (used by equivalence tests).
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace obstr::kernels {

enum class Isa { scalar, ssse3, avx2 };

Isa active();
const char* isa_name(Isa isa);
bool supported(Isa isa);
void force(Isa isa);  // throws std::runtime_error if unsupported

// out[k] = a ∘ perms[k], i.e. out[k][i] = a[perms[k][i]]; n <= 32 points,
// each permutation stored in `stride` bytes (stride >= n)
void compose_left_batch(unsigned n, std::size_t stride, const std::uint8_t* a,
                        const std::uint8_t* perms, std::size_t count,
                        std::uint8_t* out);
// out[k] = perms[k] ∘ a
void compose_right_batch(unsigned n, std::size_t stride, const std::uint8_t* a,
                         const std::uint8_t* perms, std::size_t count,
                         std::uint8_t* out);

// total popcount over an array of words
std::uint64_t popcount_words(const std::uint64_t* w, std::size_t n);

// dst[k] ^= src[k] for k < n
void xor_words(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);

// scalar reference versions (fixed, for equivalence testing)
namespace ref {
void compose_left_batch(unsigned n, std::size_t stride, const std::uint8_t* a,
                        const std::uint8_t* perms, std::size_t count,
                        std::uint8_t* out);
void compose_right_batch(unsigned n, std::size_t stride, const std::uint8_t* a,
                         const std::uint8_t* perms, std::size_t count,
                         std::uint8_t* out);
std::uint64_t popcount_words(const std::uint64_t* w, std::size_t n);
void xor_words(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);
}  // namespace ref

}  // namespace obstr::kernels
