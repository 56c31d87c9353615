#include <immintrin.h>

#include <bit>

#include "coherex/simd/kernels.h"

namespace coherex::simd::avx2 {

// Block-wise all-pairs compare of 4 x 4 lanes; the block with the smaller
// maximum advances. Values are unique per input, so each lane of `a` matches at
// most once and output order follows `a`.
std::size_t intersect_u64(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b, std::uint64_t* out) {
  std::size_t i = 0, j = 0, k = 0;
  const std::size_t na = a.size(), nb = b.size();
  while (i + 4 <= na && j + 4 <= nb) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.data() + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b.data() + j));
    __m256i m = _mm256_cmpeq_epi64(va, vb);
    m = _mm256_or_si256(m, _mm256_cmpeq_epi64(va, _mm256_permute4x64_epi64(vb, 0x39)));
    m = _mm256_or_si256(m, _mm256_cmpeq_epi64(va, _mm256_permute4x64_epi64(vb, 0x4e)));
    m = _mm256_or_si256(m, _mm256_cmpeq_epi64(va, _mm256_permute4x64_epi64(vb, 0x93)));
    unsigned mask = static_cast<unsigned>(_mm256_movemask_pd(_mm256_castsi256_pd(m)));
    while (mask) {
      const int lane = std::countr_zero(mask);
      out[k++] = a[i + lane];
      mask &= mask - 1;
    }
    const std::uint64_t amax = a[i + 3], bmax = b[j + 3];
    if (amax <= bmax) i += 4;
    if (bmax <= amax) j += 4;
  }
  while (i < na && j < nb) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      out[k++] = a[i];
      ++i;
      ++j;
    }
  }
  return k;
}

std::size_t intersect_count_u32(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  std::size_t i = 0, j = 0, k = 0;
  const std::size_t na = a.size(), nb = b.size();
  const __m256i rot = _mm256_setr_epi32(1, 2, 3, 4, 5, 6, 7, 0);
  while (i + 8 <= na && j + 8 <= nb) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.data() + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b.data() + j));
    __m256i m = _mm256_cmpeq_epi32(va, vb);
    for (int r = 1; r < 8; ++r) {
      vb = _mm256_permutevar8x32_epi32(vb, rot);
      m = _mm256_or_si256(m, _mm256_cmpeq_epi32(va, vb));
    }
    k += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(m)))));
    const std::uint32_t amax = a[i + 7], bmax = b[j + 7];
    if (amax <= bmax) i += 8;
    if (bmax <= amax) j += 8;
  }
  while (i < na && j < nb) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++k;
      ++i;
      ++j;
    }
  }
  return k;
}

// Four rows per step, one lane per row; each lane adds the same terms in the
// same order as the scalar loop.
void gather_sum(const GatherSumArgs& args, std::span<double> out) {
  const std::size_t f_count = args.features;
  const std::size_t rows = out.size();
  const int stride = static_cast<int>(f_count);
  const __m128i row_offsets = _mm_setr_epi32(0, stride, 2 * stride, 3 * stride);
  std::size_t r = 0;
  for (; r + 4 <= rows; r += 4) {
    const int* block = reinterpret_cast<const int*>(args.intervals.data() + r * f_count);
    __m256d acc = _mm256_set1_pd(args.init);
    for (std::size_t f = 0; f < f_count; ++f) {
      __m128i idx = _mm_i32gather_epi32(block + f, row_offsets, 4);
      idx = _mm_max_epi32(idx, _mm_setzero_si128());
      idx = _mm_min_epi32(idx, _mm_set1_epi32(args.last[f]));
      idx = _mm_add_epi32(idx, _mm_set1_epi32(args.base[f]));
      acc = _mm256_add_pd(acc, _mm256_i32gather_pd(args.table.data(), idx, 8));
    }
    _mm256_storeu_pd(out.data() + r, acc);
  }
  if (r < rows) {
    GatherSumArgs tail = args;
    tail.intervals = args.intervals.subspan(r * f_count);
    scalar::gather_sum(tail, out.subspan(r));
  }
}

}  // namespace coherex::simd::avx2
