#include <cstdlib>
#include <cstring>

#include "wma/error.hpp"
#include "wma/kernels.hpp"

namespace wma::kernels {

const char* to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(WMA_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

namespace {

Isa detect() {
  const char* force = std::getenv("WMA_FORCE_SCALAR");
  if (force != nullptr && std::strcmp(force, "0") != 0 && std::strlen(force) > 0) return Isa::scalar;
  return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

}  // namespace

Isa active_isa() {
  static const Isa isa = detect();
  return isa;
}

DetW3Fn det_w3_for(Isa isa) {
  if (!isa_available(isa)) throw DomainError(std::string("kernel variant unavailable: ") + to_string(isa));
#if defined(WMA_BUILD_AVX2)
  if (isa == Isa::avx2) return &det_w3_avx2;
#endif
  return &det_w3_scalar;
}

void det_w3(const Hessian3Soa& in, const DetW3Out& out) {
  static const DetW3Fn fn = det_w3_for(active_isa());
  fn(in, out);
}

}  // namespace wma::kernels
