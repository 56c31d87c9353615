#pragma once

// Data-parallel inner loops with a scalar reference and an AVX2 variant.
// Both variants produce bit-identical results; the dispatcher picks one at
// runtime from CPU features, overridable with COHEREX_ISA=scalar|avx2.

#include <cstdint>
#include <span>
#include <string_view>

namespace coherex::simd {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);
// Best ISA supported by this CPU and build.
Isa detect_isa();
// detect_isa() unless COHEREX_ISA narrows it. Computed once.
Isa active_isa();
bool isa_available(Isa isa);

// Per-feature lookup tables packed back to back. Row r of `intervals` holds
// `features` interval indices; feature f reads table[base[f] + clamp(idx, 0,
// last[f])]. out[r] = init + table[...f=0] + table[...f=1] + ... in feature
// order.
struct GatherSumArgs {
  std::span<const double> table;
  std::span<const std::int32_t> base;
  std::span<const std::int32_t> last;
  std::span<const std::int32_t> intervals;
  std::size_t features = 0;
  double init = 0.0;
};

// Sorted strictly increasing inputs. Writes the common elements, ascending, to
// `out` (capacity >= min(|a|, |b|)) and returns how many.
std::size_t intersect_u64(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b, std::uint64_t* out,
                          Isa isa = active_isa());
std::size_t intersect_count_u32(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                                Isa isa = active_isa());
void gather_sum(const GatherSumArgs& args, std::span<double> out, Isa isa = active_isa());

namespace scalar {
std::size_t intersect_u64(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b, std::uint64_t* out);
std::size_t intersect_count_u32(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);
void gather_sum(const GatherSumArgs& args, std::span<double> out);
}  // namespace scalar

namespace avx2 {
std::size_t intersect_u64(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b, std::uint64_t* out);
std::size_t intersect_count_u32(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);
void gather_sum(const GatherSumArgs& args, std::span<double> out);
}  // namespace avx2

}  // namespace coherex::simd
