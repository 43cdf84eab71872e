#include <cstdlib>
#include <cstring>

#include "hamforge/kernels.hpp"

namespace hamforge::kernels {

#if HAMFORGE_HAVE_AVX2
const KernelTable& avx2_table_impl();
#endif

const KernelTable* avx2_table() {
#if HAMFORGE_HAVE_AVX2
  static const bool ok = __builtin_cpu_supports("avx2") != 0;
  return ok ? &avx2_table_impl() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable* chosen = [] {
    const char* env = std::getenv("HAMFORGE_KERNELS");
    if (env && std::strcmp(env, "scalar") == 0) return &scalar_table();
    const KernelTable* v = avx2_table();
    return v ? v : &scalar_table();
  }();
  return *chosen;
}

}  // namespace hamforge::kernels
