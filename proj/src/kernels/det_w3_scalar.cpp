#include "wma/kernels.hpp"

namespace wma::kernels {

void det_w3_scalar(const Hessian3Soa& in, const DetW3Out& out) {
  const std::size_t count = in.size();
  for (std::size_t i = 0; i < count; ++i) {
    const double p = in.u11[i] + in.u22[i];
    const double s = in.u11[i] + in.u33[i];
    const double w = in.u22[i] + in.u33[i];
    const double q = in.u23[i];
    const double r = 0.0 - in.u13[i];
    const double v = in.u12[i];

    const double c11 = s * w - v * v;
    const double c22 = p * w - r * r;
    const double c33 = p * s - q * q;
    const double c12 = r * v - q * w;
    const double c13 = q * v - s * r;
    const double c23 = q * r - p * v;

    out.det[i] = p * c11 + q * c12 + r * c13;
    out.f11[i] = c11 + c22;
    out.f22[i] = c11 + c33;
    out.f33[i] = c22 + c33;
    out.f12[i] = c23;
    out.f13[i] = 0.0 - c13;
    out.f23[i] = c12;
  }
}

}  // namespace wma::kernels
