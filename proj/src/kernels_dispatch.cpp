#include <cstdlib>
#include <string_view>

#include "bz/kernels.hpp"

namespace bz::kernels {

#if defined(BZ_HAVE_AVX2_TU)
const Ops& avx2_ops();
#endif

namespace {

const Ops& select() {
#if defined(BZ_HAVE_AVX2_TU)
  const char* env = std::getenv("BZ_ISA");
  bool force_scalar = env && std::string_view(env) == "scalar";
  if (!force_scalar && __builtin_cpu_supports("avx2") &&
      __builtin_cpu_supports("fma")) {
    return avx2_ops();
  }
#endif
  return scalar_ops();
}

}  // namespace

const Ops& active_ops() {
  static const Ops& sel = select();
  return sel;
}

const char* active_isa() { return active_ops().name; }

}  // namespace bz::kernels
