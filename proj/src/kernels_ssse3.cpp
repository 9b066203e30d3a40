// SSSE3 variants: one pshufb per 16-point composition.
#include <cstddef>
#include <cstdint>

#include <tmmintrin.h>

namespace obstr::kernels::ssse3impl {

// out[k][i] = a[b_k[i]]: table lookup with table = a, indices = b_k
void compose_left_batch(unsigned n, std::size_t stride, const std::uint8_t* a,
                        const std::uint8_t* perms, std::size_t count, std::uint8_t* out) {
  (void)n;
  __m128i ta = _mm_loadu_si128((const __m128i*)a);
  for (std::size_t k = 0; k < count; k++) {
    __m128i idx = _mm_loadu_si128((const __m128i*)(perms + k * stride));
    _mm_storeu_si128((__m128i*)(out + k * stride), _mm_shuffle_epi8(ta, idx));
  }
}

// out[k][i] = b_k[a[i]]: table = b_k, indices = a
void compose_right_batch(unsigned n, std::size_t stride, const std::uint8_t* a,
                         const std::uint8_t* perms, std::size_t count, std::uint8_t* out) {
  (void)n;
  __m128i ia = _mm_loadu_si128((const __m128i*)a);
  for (std::size_t k = 0; k < count; k++) {
    __m128i tb = _mm_loadu_si128((const __m128i*)(perms + k * stride));
    _mm_storeu_si128((__m128i*)(out + k * stride), _mm_shuffle_epi8(tb, ia));
  }
}

}  // namespace obstr::kernels::ssse3impl
