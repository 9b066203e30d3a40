#include "obstr/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace obstr::kernels {

namespace ref {

// Convention: permutation buffers are identity-padded out to `stride`
// (byte i holds i for n <= i < stride), which keeps padded bytes fixed
// under composition and makes byte equality mean permutation equality.
void compose_left_batch(unsigned n, std::size_t stride, const std::uint8_t* a,
                        const std::uint8_t* perms, std::size_t count,
                        std::uint8_t* out) {
  (void)n;
  for (std::size_t k = 0; k < count; k++) {
    const std::uint8_t* b = perms + k * stride;
    std::uint8_t* o = out + k * stride;
    for (unsigned i = 0; i < stride; i++) o[i] = a[b[i]];
  }
}

void compose_right_batch(unsigned n, std::size_t stride, const std::uint8_t* a,
                         const std::uint8_t* perms, std::size_t count,
                         std::uint8_t* out) {
  (void)n;
  for (std::size_t k = 0; k < count; k++) {
    const std::uint8_t* b = perms + k * stride;
    std::uint8_t* o = out + k * stride;
    for (unsigned i = 0; i < stride; i++) o[i] = b[a[i]];
  }
}

std::uint64_t popcount_words(const std::uint64_t* w, std::size_t n) {
  std::uint64_t t = 0;
  for (std::size_t i = 0; i < n; i++) t += (std::uint64_t)__builtin_popcountll(w[i]);
  return t;
}

void xor_words(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  for (std::size_t i = 0; i < n; i++) dst[i] ^= src[i];
}

}  // namespace ref

#if defined(OBSTR_BUILD_SSSE3)
namespace ssse3impl {
void compose_left_batch(unsigned n, std::size_t stride, const std::uint8_t* a,
                        const std::uint8_t* perms, std::size_t count, std::uint8_t* out);
void compose_right_batch(unsigned n, std::size_t stride, const std::uint8_t* a,
                         const std::uint8_t* perms, std::size_t count, std::uint8_t* out);
}
#endif
#if defined(OBSTR_BUILD_AVX2)
namespace avx2impl {
void compose_left_batch(unsigned n, std::size_t stride, const std::uint8_t* a,
                        const std::uint8_t* perms, std::size_t count, std::uint8_t* out);
void compose_right_batch(unsigned n, std::size_t stride, const std::uint8_t* a,
                         const std::uint8_t* perms, std::size_t count, std::uint8_t* out);
std::uint64_t popcount_words(const std::uint64_t* w, std::size_t n);
void xor_words(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);
}
#endif

namespace {

bool cpu_has(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::ssse3:
#if defined(OBSTR_BUILD_SSSE3) && (defined(__x86_64__) || defined(__i386__))
      return __builtin_cpu_supports("ssse3");
#else
      return false;
#endif
    case Isa::avx2:
#if defined(OBSTR_BUILD_AVX2) && (defined(__x86_64__) || defined(__i386__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa pick_default() {
  if (const char* env = std::getenv("OBSTR_KERNEL")) {
    std::string s(env);
    Isa want = Isa::scalar;
    if (s == "avx2") want = Isa::avx2;
    else if (s == "ssse3") want = Isa::ssse3;
    else if (s == "scalar") want = Isa::scalar;
    if (cpu_has(want)) return want;
    return Isa::scalar;
  }
  if (cpu_has(Isa::avx2)) return Isa::avx2;
  if (cpu_has(Isa::ssse3)) return Isa::ssse3;
  return Isa::scalar;
}

Isa g_active = pick_default();

}  // namespace

Isa active() { return g_active; }

bool supported(Isa isa) { return cpu_has(isa); }

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::ssse3: return "ssse3";
    case Isa::avx2: return "avx2";
  }
  return "?";
}

void force(Isa isa) {
  if (!cpu_has(isa)) throw std::runtime_error("kernel ISA not supported on this CPU");
  g_active = isa;
}

void compose_left_batch(unsigned n, std::size_t stride, const std::uint8_t* a,
                        const std::uint8_t* perms, std::size_t count, std::uint8_t* out) {
#if defined(OBSTR_BUILD_AVX2)
  if (g_active == Isa::avx2 && n <= 32 && stride == 32) {
    avx2impl::compose_left_batch(n, stride, a, perms, count, out);
    return;
  }
#endif
#if defined(OBSTR_BUILD_SSSE3)
  if ((g_active == Isa::ssse3 || g_active == Isa::avx2) && n <= 16 && stride == 16) {
    ssse3impl::compose_left_batch(n, stride, a, perms, count, out);
    return;
  }
#endif
  ref::compose_left_batch(n, stride, a, perms, count, out);
}

void compose_right_batch(unsigned n, std::size_t stride, const std::uint8_t* a,
                         const std::uint8_t* perms, std::size_t count, std::uint8_t* out) {
#if defined(OBSTR_BUILD_AVX2)
  if (g_active == Isa::avx2 && n <= 32 && stride == 32) {
    avx2impl::compose_right_batch(n, stride, a, perms, count, out);
    return;
  }
#endif
#if defined(OBSTR_BUILD_SSSE3)
  if ((g_active == Isa::ssse3 || g_active == Isa::avx2) && n <= 16 && stride == 16) {
    ssse3impl::compose_right_batch(n, stride, a, perms, count, out);
    return;
  }
#endif
  ref::compose_right_batch(n, stride, a, perms, count, out);
}

std::uint64_t popcount_words(const std::uint64_t* w, std::size_t n) {
#if defined(OBSTR_BUILD_AVX2)
  if (g_active == Isa::avx2 && n >= 16) return avx2impl::popcount_words(w, n);
#endif
  return ref::popcount_words(w, n);
}

void xor_words(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
#if defined(OBSTR_BUILD_AVX2)
  if (g_active == Isa::avx2 && n >= 8) {
    avx2impl::xor_words(dst, src, n);
    return;
  }
#endif
  ref::xor_words(dst, src, n);
}

}  // namespace obstr::kernels
