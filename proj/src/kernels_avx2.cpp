// AVX2 variants.  32-point composition needs the two-shuffle trick since
// vpshufb only indexes within each 128-bit lane: look up against broadcast
// low and high halves of the table and blend by index bit 4.
#include <cstddef>
#include <cstdint>

#include <immintrin.h>

namespace obstr::kernels::avx2impl {

namespace {

inline __m256i lookup32(__m256i tlo, __m256i thi, __m256i idx) {
  const __m256i bit4 = _mm256_set1_epi8(0x10);
  __m256i hi_sel = _mm256_and_si256(idx, bit4);
  // indices >= 16: disable in the low lookup (set 0x80), enable in the high
  __m256i idx_lo = _mm256_or_si256(idx, _mm256_slli_epi16(hi_sel, 3));
  __m256i idx_hi_raw = _mm256_xor_si256(idx, bit4);
  __m256i lo_sel = _mm256_and_si256(idx_hi_raw, bit4);
  __m256i idx_hi = _mm256_or_si256(idx_hi_raw, _mm256_slli_epi16(lo_sel, 3));
  return _mm256_or_si256(_mm256_shuffle_epi8(tlo, idx_lo),
                         _mm256_shuffle_epi8(thi, idx_hi));
}

}  // namespace

void compose_left_batch(unsigned n, std::size_t stride, const std::uint8_t* a,
                        const std::uint8_t* perms, std::size_t count, std::uint8_t* out) {
  (void)n;
  __m256i tlo = _mm256_broadcastsi128_si256(_mm_loadu_si128((const __m128i*)a));
  __m256i thi = _mm256_broadcastsi128_si256(_mm_loadu_si128((const __m128i*)(a + 16)));
  for (std::size_t k = 0; k < count; k++) {
    __m256i idx = _mm256_loadu_si256((const __m256i*)(perms + k * stride));
    _mm256_storeu_si256((__m256i*)(out + k * stride), lookup32(tlo, thi, idx));
  }
}

void compose_right_batch(unsigned n, std::size_t stride, const std::uint8_t* a,
                         const std::uint8_t* perms, std::size_t count, std::uint8_t* out) {
  (void)n;
  __m256i idx = _mm256_loadu_si256((const __m256i*)a);
  for (std::size_t k = 0; k < count; k++) {
    const std::uint8_t* b = perms + k * stride;
    __m256i tlo = _mm256_broadcastsi128_si256(_mm_loadu_si128((const __m128i*)b));
    __m256i thi = _mm256_broadcastsi128_si256(_mm_loadu_si128((const __m128i*)(b + 16)));
    _mm256_storeu_si256((__m256i*)(out + k * stride), lookup32(tlo, thi, idx));
  }
}

std::uint64_t popcount_words(const std::uint64_t* w, std::size_t n) {
  // Harley-Seal style nibble counting
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  const __m256i table = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                         0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i v = _mm256_loadu_si256((const __m256i*)(w + i));
    __m256i lo = _mm256_and_si256(v, low_mask);
    __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
    __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(table, lo),
                                  _mm256_shuffle_epi8(table, hi));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(cnt, _mm256_setzero_si256()));
  }
  std::uint64_t total = 0;
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256((__m256i*)lanes, acc);
  total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; i++) total += (std::uint64_t)__builtin_popcountll(w[i]);
  return total;
}

void xor_words(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i a = _mm256_loadu_si256((const __m256i*)(dst + i));
    __m256i b = _mm256_loadu_si256((const __m256i*)(src + i));
    _mm256_storeu_si256((__m256i*)(dst + i), _mm256_xor_si256(a, b));
  }
  for (; i < n; i++) dst[i] ^= src[i];
}

}  // namespace obstr::kernels::avx2impl
