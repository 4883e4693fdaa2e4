#pragma once

#include <cstddef>

#include "nhflip/types.hpp"

namespace nhflip::kernels {

// Inner-loop primitives over contiguous interleaved complex arrays.
// A scalar reference implementation always exists; wider variants are
// selected at runtime and must agree with it (see the equivalence tests).
struct Backend {
  const char* name;

  // out[j] = i * kappa * (b[j-1] + b[j+1]), hard wall outside [0, m).
  void (*hop_rhs)(const cplx* b, cplx* out, std::size_t m, double kappa);

  // y[j] += a * x[j], real a
  void (*axpy_real)(cplx* y, const cplx* x, double a, std::size_t n);

  // y[j] = x0[j] + dt/6 * (k1[j] + 2 k2[j] + 2 k3[j] + k4[j])
  void (*rk4_combine)(cplx* y, const cplx* x0, const cplx* k1, const cplx* k2,
                      const cplx* k3, const cplx* k4, double dt, std::size_t n);

  // sum_j |x[j]|^2
  double (*norm_sq)(const cplx* x, std::size_t n);
};

const Backend& scalar_backend();

// Null when the build or the host CPU lacks the instruction set.
const Backend* avx2_backend();
const Backend* neon_backend();

// Runtime pick: widest available, overridable via NHFLIP_KERNELS=scalar|avx2|neon.
const Backend& active_backend();

}  // namespace nhflip::kernels
