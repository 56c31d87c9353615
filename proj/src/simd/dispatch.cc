#include <cstdlib>
#include <string>

#include "coherex/error.h"
#include "coherex/simd/kernels.h"

namespace coherex::simd {

std::string_view isa_name(Isa isa) { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) {
  if (isa == Isa::kScalar) return true;
#if defined(COHEREX_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa detect_isa() { return isa_available(Isa::kAvx2) ? Isa::kAvx2 : Isa::kScalar; }

Isa active_isa() {
  static const Isa isa = [] {
    const char* env = std::getenv("COHEREX_ISA");
    if (env && std::string(env) == "scalar") return Isa::kScalar;
    return detect_isa();
  }();
  return isa;
}

#if defined(COHEREX_HAVE_AVX2)
#define COHEREX_DISPATCH(isa, fn, ...) \
  ((isa) == Isa::kAvx2 && isa_available(Isa::kAvx2) ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define COHEREX_DISPATCH(isa, fn, ...) scalar::fn(__VA_ARGS__)
#endif

std::size_t intersect_u64(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b, std::uint64_t* out,
                          Isa isa) {
  return COHEREX_DISPATCH(isa, intersect_u64, a, b, out);
}

std::size_t intersect_count_u32(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b, Isa isa) {
  return COHEREX_DISPATCH(isa, intersect_count_u32, a, b);
}

void gather_sum(const GatherSumArgs& args, std::span<double> out, Isa isa) {
  if (args.intervals.size() < out.size() * args.features || args.base.size() < args.features ||
      args.last.size() < args.features) {
    throw ContractViolation("gather_sum: argument sizes do not match");
  }
  COHEREX_DISPATCH(isa, gather_sum, args, out);
}

}  // namespace coherex::simd
