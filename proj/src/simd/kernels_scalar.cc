#include <algorithm>

#include "coherex/simd/kernels.h"

namespace coherex::simd::scalar {

std::size_t intersect_u64(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b, std::uint64_t* out) {
  std::size_t i = 0, j = 0, k = 0;
  while (i < a.size() && j < b.size()) {
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
  while (i < a.size() && j < b.size()) {
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

void gather_sum(const GatherSumArgs& args, std::span<double> out) {
  const std::size_t f_count = args.features;
  for (std::size_t r = 0; r < out.size(); ++r) {
    double acc = args.init;
    const std::int32_t* row = args.intervals.data() + r * f_count;
    for (std::size_t f = 0; f < f_count; ++f) {
      const std::int32_t idx = std::clamp(row[f], std::int32_t{0}, args.last[f]);
      acc += args.table[static_cast<std::size_t>(args.base[f] + idx)];
    }
    out[r] = acc;
  }
}

}  // namespace coherex::simd::scalar
