#include "linequad/simd/dispatch.hpp"

#include <cstdlib>
#include <string_view>

namespace linequad::simd {

#ifndef LINEQUAD_HAVE_AVX2
const KernelTable* avx2_kernels() { return nullptr; }
#endif

namespace {

bool cpu_has_avx2() {
#if defined(LINEQUAD_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

struct Selection {
  const KernelTable* table;
  std::string_view isa;
};

Selection select() {
  const char* env = std::getenv("LINEQUAD_SIMD");
  const bool force_scalar = env && std::string_view(env) == "scalar";
  if (!force_scalar && cpu_has_avx2()) {
    if (const KernelTable* t = avx2_kernels()) return {t, "avx2"};
  }
  return {&scalar_kernels(), "scalar"};
}

const Selection& selection() {
  static const Selection s = select();
  return s;
}

}  // namespace

const KernelTable& kernels() { return *selection().table; }
std::string_view active_isa() { return selection().isa; }

}  // namespace linequad::simd
