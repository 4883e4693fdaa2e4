#pragma once

#include <functional>

#include "nhflip/types.hpp"

namespace nhflip {

struct QuadratureOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_depth = 40;
  // absolute-error budget is distributed over subintervals
};

// Adaptive Gauss-Kronrod 15(7) for complex integrands on [a, b].
// Throws QuadratureNonConvergence when the tolerance cannot be met.
cplx integrate(const std::function<cplx(double)>& f, double a, double b,
               const QuadratureOptions& opts = {});

// Same, with inverse-square-root endpoint singularities removed by the
// substitutions x = a + u^2 / x = b - u^2 on the two halves.
cplx integrate_sqrt_endpoints(const std::function<cplx(double)>& f, double a,
                              double b, const QuadratureOptions& opts = {});

}  // namespace nhflip
