#pragma once

// Batched pointwise kernels for the n = 3, m = 2 operator. Inputs are
// structure-of-arrays Hessian components; each point is independent.
//
//       | u11+u22   u23     -u13   |
//   W = | u23       u11+u33  u12   |
//       | -u13      u12      u22+u33 |
//
// A scalar reference and an AVX2 variant share one operation order, so both
// produce identical bits. The variant is chosen once at runtime.

#include <cstddef>
#include <span>

namespace wma::kernels {

struct Hessian3Soa {
  std::span<const double> u11, u22, u33, u12, u13, u23;
  std::size_t size() const { return u11.size(); }
};

/// det(W) and the symmetric linearization F^{ij} per point.
struct DetW3Out {
  std::span<double> det, f11, f22, f33, f12, f13, f23;
};

enum class Isa { scalar, avx2 };

const char* to_string(Isa isa);

using DetW3Fn = void (*)(const Hessian3Soa&, const DetW3Out&);

void det_w3_scalar(const Hessian3Soa& in, const DetW3Out& out);
#if defined(WMA_BUILD_AVX2)
void det_w3_avx2(const Hessian3Soa& in, const DetW3Out& out);
#endif

/// Best variant the CPU supports. WMA_FORCE_SCALAR=1 in the environment pins the scalar path.
Isa active_isa();
/// True when the named variant was compiled in and the CPU can run it.
bool isa_available(Isa isa);
DetW3Fn det_w3_for(Isa isa);

/// Dispatches to the active variant. All spans must have equal length.
void det_w3(const Hessian3Soa& in, const DetW3Out& out);

}  // namespace wma::kernels
