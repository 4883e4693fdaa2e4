#include "nhflip/quadrature.hpp"

#include <cmath>

namespace nhflip {

namespace {

// Gauss-Kronrod 15-point nodes/weights on [-1, 1] (Kronrod), with the
// embedded 7-point Gauss rule on the odd-indexed nodes.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct PanelResult {
  cplx value;
  double error;
};

PanelResult gk15(const std::function<cplx(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  cplx fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * kXgk[i]);
    fv[14 - i] = f(c + h * kXgk[i]);
  }
  fv[7] = f(c);
  cplx kron(0.0, 0.0), gauss(0.0, 0.0);
  for (int i = 0; i < 7; ++i) kron += kWgk[i] * (fv[i] + fv[14 - i]);
  kron += kWgk[7] * fv[7];
  for (int i = 0; i < 3; ++i) gauss += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
  gauss += kWg[3] * fv[7];
  return {h * kron, std::abs(h * (kron - gauss))};
}

void adapt(const std::function<cplx(double)>& f, double a, double b,
           const QuadratureOptions& opts, int depth, cplx& acc,
           double& err_acc, double tol_per_unit) {
  const PanelResult r = gk15(f, a, b);
  const double local_tol =
      std::max(opts.abs_tol * (b - a) * tol_per_unit,
               opts.rel_tol * std::abs(r.value));
  if (r.error <= local_tol || depth >= opts.max_depth) {
    if (depth >= opts.max_depth && r.error > 100.0 * local_tol)
      throw QuadratureNonConvergence("panel error did not shrink at max depth");
    acc += r.value;
    err_acc += r.error;
    return;
  }
  const double mid = 0.5 * (a + b);
  adapt(f, a, mid, opts, depth + 1, acc, err_acc, tol_per_unit);
  adapt(f, mid, b, opts, depth + 1, acc, err_acc, tol_per_unit);
}

}  // namespace

cplx integrate(const std::function<cplx(double)>& f, double a, double b,
               const QuadratureOptions& opts) {
  if (a == b) return {0.0, 0.0};
  cplx acc(0.0, 0.0);
  double err = 0.0;
  adapt(f, a, b, opts, 0, acc, err, 1.0 / std::abs(b - a));
  return acc;
}

cplx integrate_sqrt_endpoints(const std::function<cplx(double)>& f, double a,
                              double b, const QuadratureOptions& opts) {
  if (a == b) return {0.0, 0.0};
  const double mid = 0.5 * (a + b);
  const double ha = std::sqrt(mid - a);
  const double hb = std::sqrt(b - mid);
  auto left = [&](double u) { return f(a + u * u) * (2.0 * u); };
  auto right = [&](double u) { return f(b - u * u) * (2.0 * u); };
  return integrate(left, 0.0, ha, opts) + integrate(right, 0.0, hb, opts);
}

}  // namespace nhflip
