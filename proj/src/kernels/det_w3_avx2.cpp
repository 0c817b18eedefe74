#include <immintrin.h>

#include "wma/kernels.hpp"

namespace wma::kernels {

void det_w3_avx2(const Hessian3Soa& in, const DetW3Out& out) {
  const std::size_t count = in.size();
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256d u11 = _mm256_loadu_pd(in.u11.data() + i);
    const __m256d u22 = _mm256_loadu_pd(in.u22.data() + i);
    const __m256d u33 = _mm256_loadu_pd(in.u33.data() + i);
    const __m256d p = _mm256_add_pd(u11, u22);
    const __m256d s = _mm256_add_pd(u11, u33);
    const __m256d w = _mm256_add_pd(u22, u33);
    const __m256d q = _mm256_loadu_pd(in.u23.data() + i);
    const __m256d r = _mm256_sub_pd(zero, _mm256_loadu_pd(in.u13.data() + i));
    const __m256d v = _mm256_loadu_pd(in.u12.data() + i);

    const __m256d c11 = _mm256_sub_pd(_mm256_mul_pd(s, w), _mm256_mul_pd(v, v));
    const __m256d c22 = _mm256_sub_pd(_mm256_mul_pd(p, w), _mm256_mul_pd(r, r));
    const __m256d c33 = _mm256_sub_pd(_mm256_mul_pd(p, s), _mm256_mul_pd(q, q));
    const __m256d c12 = _mm256_sub_pd(_mm256_mul_pd(r, v), _mm256_mul_pd(q, w));
    const __m256d c13 = _mm256_sub_pd(_mm256_mul_pd(q, v), _mm256_mul_pd(s, r));
    const __m256d c23 = _mm256_sub_pd(_mm256_mul_pd(q, r), _mm256_mul_pd(p, v));

    const __m256d det = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(p, c11), _mm256_mul_pd(q, c12)),
                                      _mm256_mul_pd(r, c13));
    _mm256_storeu_pd(out.det.data() + i, det);
    _mm256_storeu_pd(out.f11.data() + i, _mm256_add_pd(c11, c22));
    _mm256_storeu_pd(out.f22.data() + i, _mm256_add_pd(c11, c33));
    _mm256_storeu_pd(out.f33.data() + i, _mm256_add_pd(c22, c33));
    _mm256_storeu_pd(out.f12.data() + i, c23);
    _mm256_storeu_pd(out.f13.data() + i, _mm256_sub_pd(zero, c13));
    _mm256_storeu_pd(out.f23.data() + i, c12);
  }
  if (i < count) {
    const std::size_t rest = count - i;
    const Hessian3Soa tail{in.u11.subspan(i, rest), in.u22.subspan(i, rest), in.u33.subspan(i, rest),
                           in.u12.subspan(i, rest), in.u13.subspan(i, rest), in.u23.subspan(i, rest)};
    const DetW3Out tail_out{out.det.subspan(i, rest), out.f11.subspan(i, rest),
                            out.f22.subspan(i, rest), out.f33.subspan(i, rest),
                            out.f12.subspan(i, rest), out.f13.subspan(i, rest),
                            out.f23.subspan(i, rest)};
    det_w3_scalar(tail, tail_out);
  }
}

}  // namespace wma::kernels
