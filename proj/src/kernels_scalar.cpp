#include "nhflip/kernels.hpp"

namespace nhflip::kernels {

namespace {

void hop_rhs_scalar(const cplx* b, cplx* out, std::size_t m, double kappa) {
  if (m == 0) return;
  auto hop = [kappa](const cplx& s) {
    return cplx(-kappa * s.imag(), kappa * s.real());  // i * kappa * s
  };
  if (m == 1) {
    out[0] = cplx(0.0, 0.0);
    return;
  }
  out[0] = hop(b[1]);
  for (std::size_t j = 1; j + 1 < m; ++j) out[j] = hop(b[j - 1] + b[j + 1]);
  out[m - 1] = hop(b[m - 2]);
}

void axpy_real_scalar(cplx* y, const cplx* x, double a, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) y[j] += a * x[j];
}

void rk4_combine_scalar(cplx* y, const cplx* x0, const cplx* k1, const cplx* k2,
                        const cplx* k3, const cplx* k4, double dt,
                        std::size_t n) {
  const double h = dt / 6.0;
  for (std::size_t j = 0; j < n; ++j)
    y[j] = x0[j] + h * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
}

double norm_sq_scalar(const cplx* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    s += x[j].real() * x[j].real() + x[j].imag() * x[j].imag();
  return s;
}

}  // namespace

const Backend& scalar_backend() {
  static const Backend b{"scalar", hop_rhs_scalar, axpy_real_scalar,
                         rk4_combine_scalar, norm_sq_scalar};
  return b;
}

}  // namespace nhflip::kernels
