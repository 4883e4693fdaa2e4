#include "nhflip/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace nhflip::kernels {

namespace {

// Arrays of std::complex<double> are interleaved (re, im); one 256-bit vector
// holds two complex values.

void hop_rhs_avx2(const cplx* b, cplx* out, std::size_t m, double kappa) {
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
  const __m256d scale = _mm256_setr_pd(-kappa, kappa, -kappa, kappa);
  std::size_t j = 1;
  for (; j + 2 < m; j += 2) {
    __m256d lo = _mm256_loadu_pd(bd + 2 * (j - 1));
    __m256d hi = _mm256_loadu_pd(bd + 2 * (j + 1));
    __m256d sum = _mm256_add_pd(lo, hi);
    __m256d swapped = _mm256_permute_pd(sum, 0b0101);  // (im, re) pairs
    _mm256_storeu_pd(od + 2 * j, _mm256_mul_pd(swapped, scale));
  }
  for (; j + 1 < m; ++j) out[j] = hop1(b[j - 1] + b[j + 1]);
  out[m - 1] = hop1(b[m - 2]);
}

void axpy_real_avx2(cplx* y, const cplx* x, double a, std::size_t n) {
  double* yd = reinterpret_cast<double*>(y);
  const double* xd = reinterpret_cast<const double*>(x);
  const std::size_t nd = 2 * n;
  const __m256d av = _mm256_set1_pd(a);
  std::size_t j = 0;
  for (; j + 4 <= nd; j += 4) {
    __m256d yv = _mm256_loadu_pd(yd + j);
    __m256d xv = _mm256_loadu_pd(xd + j);
    _mm256_storeu_pd(yd + j, _mm256_add_pd(yv, _mm256_mul_pd(av, xv)));
  }
  for (; j < nd; ++j) yd[j] += a * xd[j];
}

void rk4_combine_avx2(cplx* y, const cplx* x0, const cplx* k1, const cplx* k2,
                      const cplx* k3, const cplx* k4, double dt,
                      std::size_t n) {
  const double h = dt / 6.0;
  double* yd = reinterpret_cast<double*>(y);
  const double* x0d = reinterpret_cast<const double*>(x0);
  const double* k1d = reinterpret_cast<const double*>(k1);
  const double* k2d = reinterpret_cast<const double*>(k2);
  const double* k3d = reinterpret_cast<const double*>(k3);
  const double* k4d = reinterpret_cast<const double*>(k4);
  const std::size_t nd = 2 * n;
  const __m256d hv = _mm256_set1_pd(h);
  const __m256d two = _mm256_set1_pd(2.0);
  std::size_t j = 0;
  for (; j + 4 <= nd; j += 4) {
    __m256d acc = _mm256_loadu_pd(k1d + j);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(two, _mm256_loadu_pd(k2d + j)));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(two, _mm256_loadu_pd(k3d + j)));
    acc = _mm256_add_pd(acc, _mm256_loadu_pd(k4d + j));
    _mm256_storeu_pd(yd + j,
                     _mm256_add_pd(_mm256_loadu_pd(x0d + j),
                                   _mm256_mul_pd(hv, acc)));
  }
  for (; j < nd; ++j)
    yd[j] = x0d[j] + h * (k1d[j] + 2.0 * k2d[j] + 2.0 * k3d[j] + k4d[j]);
}

double norm_sq_avx2(const cplx* x, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  const std::size_t nd = 2 * n;
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= nd; j += 4) {
    __m256d v = _mm256_loadu_pd(xd + j);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; j < nd; ++j) s += xd[j] * xd[j];
  return s;
}

}  // namespace

const Backend* avx2_backend() {
  if (!__builtin_cpu_supports("avx2")) return nullptr;
  static const Backend b{"avx2", hop_rhs_avx2, axpy_real_avx2,
                         rk4_combine_avx2, norm_sq_avx2};
  return &b;
}

}  // namespace nhflip::kernels

#else

namespace nhflip::kernels {
const Backend* avx2_backend() { return nullptr; }
}  // namespace nhflip::kernels

#endif
