#include <cstdlib>
#include <string_view>

#include "vpe/kernels.hpp"

namespace vpe::kernels {

#if defined(VPE_HAVE_AVX2_KERNELS)
const KernelTable& avx2_table_impl();
#endif

const KernelTable* avx2_table() {
#if defined(VPE_HAVE_AVX2_KERNELS)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &avx2_table_impl() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& chosen = [] () -> const KernelTable& {
    const char* force = std::getenv("VPE_FORCE_SCALAR");
    if (force != nullptr && std::string_view(force) == "1") return scalar_table();
    if (const KernelTable* t = avx2_table()) return *t;
    return scalar_table();
  }();
  return chosen;
}

}  // namespace vpe::kernels
