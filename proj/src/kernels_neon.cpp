#include "nhflip/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

namespace nhflip::kernels {

namespace {

// One 128-bit vector holds a single complex double (re, im).

void hop_rhs_neon(const cplx* b, cplx* out, std::size_t m, double kappa) {
  if (m == 0) return;
  auto hop1 = [kappa](const cplx& s) {
    return cplx(-kappa * s.imag(), kappa * s.real());
  };
  if (m == 1) {
    out[0] = cplx(0.0, 0.0);
    return;
  }
  out[0] = hop1(b[1]);
  const double* bd = reinterpret_cast<const double*>(b);
  double* od = reinterpret_cast<double*>(out);
  const float64x2_t scale = {-kappa, kappa};
  for (std::size_t j = 1; j + 1 < m; ++j) {
    float64x2_t lo = vld1q_f64(bd + 2 * (j - 1));
    float64x2_t hi = vld1q_f64(bd + 2 * (j + 1));
    float64x2_t sum = vaddq_f64(lo, hi);
    float64x2_t swapped = vextq_f64(sum, sum, 1);
    vst1q_f64(od + 2 * j, vmulq_f64(swapped, scale));
  }
  out[m - 1] = hop1(b[m - 2]);
}

void axpy_real_neon(cplx* y, const cplx* x, double a, std::size_t n) {
  double* yd = reinterpret_cast<double*>(y);
  const double* xd = reinterpret_cast<const double*>(x);
  const float64x2_t av = vdupq_n_f64(a);
  for (std::size_t j = 0; j < 2 * n; j += 2) {
    float64x2_t yv = vld1q_f64(yd + j);
    float64x2_t xv = vld1q_f64(xd + j);
    vst1q_f64(yd + j, vaddq_f64(yv, vmulq_f64(av, xv)));
  }
}

void rk4_combine_neon(cplx* y, const cplx* x0, const cplx* k1, const cplx* k2,
                      const cplx* k3, const cplx* k4, double dt,
                      std::size_t n) {
  const double h = dt / 6.0;
  double* yd = reinterpret_cast<double*>(y);
  const double* x0d = reinterpret_cast<const double*>(x0);
  const double* k1d = reinterpret_cast<const double*>(k1);
  const double* k2d = reinterpret_cast<const double*>(k2);
  const double* k3d = reinterpret_cast<const double*>(k3);
  const double* k4d = reinterpret_cast<const double*>(k4);
  const float64x2_t hv = vdupq_n_f64(h);
  const float64x2_t two = vdupq_n_f64(2.0);
  for (std::size_t j = 0; j < 2 * n; j += 2) {
    float64x2_t acc = vld1q_f64(k1d + j);
    acc = vaddq_f64(acc, vmulq_f64(two, vld1q_f64(k2d + j)));
    acc = vaddq_f64(acc, vmulq_f64(two, vld1q_f64(k3d + j)));
    acc = vaddq_f64(acc, vld1q_f64(k4d + j));
    vst1q_f64(yd + j, vaddq_f64(vld1q_f64(x0d + j), vmulq_f64(hv, acc)));
  }
}

double norm_sq_neon(const cplx* x, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  float64x2_t acc = vdupq_n_f64(0.0);
  for (std::size_t j = 0; j < 2 * n; j += 2) {
    float64x2_t v = vld1q_f64(xd + j);
    acc = vaddq_f64(acc, vmulq_f64(v, v));
  }
  return vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
}

}  // namespace

const Backend* neon_backend() {
  static const Backend b{"neon", hop_rhs_neon, axpy_real_neon,
                         rk4_combine_neon, norm_sq_neon};
  return &b;
}

}  // namespace nhflip::kernels

#else

namespace nhflip::kernels {
const Backend* neon_backend() { return nullptr; }
}  // namespace nhflip::kernels

#endif
