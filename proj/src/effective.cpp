#include "nhflip/effective.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nhflip/eigen.hpp"
#include "nhflip/quadrature.hpp"

namespace nhflip {

namespace {

void guard_band_edge(double w, double kappa) {
  if (2.0 * kappa - std::abs(w) < 1e-6 * kappa) {
    std::ostringstream os;
    os << "omega_m = " << w << " too close to the band edge 2k = "
       << 2.0 * kappa;
    throw BandEdgeSingularity(os.str());
  }
}

// Neville polynomial extrapolation to x = 0.
cplx extrapolate_to_zero(const std::vector<double>& x,
                         const std::vector<cplx>& y, double* last_correction) {
  const int k = (int)x.size();
  std::vector<cplx> p = y;
  for (int level = 1; level < k; ++level)
    for (int i = 0; i < k - level; ++i)
      p[i] = (x[i + level] * p[i] - x[i] * p[i + 1]) / (x[i + level] - x[i]);
  if (last_correction) {
    // size of the final refinement step, as a stability indicator
    std::vector<cplx> q(y.begin(), y.end() - 1);
    std::vector<double> xq(x.begin(), x.end() - 1);
    for (int level = 1; level < k - 1; ++level)
      for (int i = 0; i < k - 1 - level; ++i)
        q[i] = (xq[i + level] * q[i] - xq[i] * q[i + 1]) /
               (xq[i + level] - xq[i]);
    *last_correction = std::abs(p[0] - q[0]);
  }
  return p[0];
}

}  // namespace

SpectralCorrelation lattice_spectral_correlation(
    const ValidatedConfig& config) {
  const auto sys = config.sys;
  SpectralCorrelation s;
  s.n = sys.n_states;
  s.w_min = -2.0 * sys.kappa;
  s.w_max = 2.0 * sys.kappa;
  s.s = [sys](int n, int m, double w) -> cplx {
    const double arg = std::clamp(-w / (2.0 * sys.kappa), -1.0, 1.0);
    const double q = std::acos(arg);
    const double root = std::sqrt(std::max(
        4.0 * sys.kappa * sys.kappa - w * w, 0.0));
    const int d = std::abs(sys.alpha_n[n] - sys.alpha_n[m]);
    return cplx(sys.kappa_n[n] * sys.kappa_n[m] * std::cos(q * d) /
                    (M_PI * root),
                0.0);
  };
  return s;
}

CouplingMatrix delta_analytic_lattice(const ValidatedConfig& config) {
  const auto& sys = config.sys;
  const int n = sys.n_states;
  CouplingMatrix cm;
  cm.n = n;
  cm.provenance = CouplingMatrix::Provenance::analytic;
  cm.delta.resize(n * n);
  for (int m = 0; m < n; ++m) {
    const double wm = sys.omega[m];
    guard_band_edge(wm, sys.kappa);
    const double root = std::sqrt(4.0 * sys.kappa * sys.kappa - wm * wm);
    for (int i = 0; i < n; ++i) {
      const int d = std::abs(sys.alpha_n[i] - sys.alpha_n[m]);
      const cplx bracket = (cplx(root, wm) / (2.0 * sys.kappa)) * IU;
      cplx pw(1.0, 0.0);
      for (int k = 0; k < d; ++k) pw *= bracket;
      cm.at(i, m) = sys.kappa_n[i] * sys.kappa_n[m] * pw / root;
    }
  }
  return cm;
}

std::vector<cplx> memory_kernel(const SpectralCorrelation& spectral,
                                double tau) {
  const int n = spectral.n;
  std::vector<cplx> phi(n * n);
  QuadratureOptions q;
  q.abs_tol = 1e-12;
  q.rel_tol = 1e-10;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto f = [&](double w) {
        return spectral.s(i, j, w) * std::exp(-IU * w * tau);
      };
      phi[i * n + j] =
          integrate_sqrt_endpoints(f, spectral.w_min, spectral.w_max, q);
    }
  return phi;
}

CouplingMatrix delta_pv_quadrature(const SpectralCorrelation& spectral,
                                   const std::vector<double>& omega,
                                   const PvOptions& opts) {
  const int n = spectral.n;
  const double bw = spectral.w_max - spectral.w_min;
  CouplingMatrix cm;
  cm.n = n;
  cm.provenance = CouplingMatrix::Provenance::pv_quadrature;
  cm.delta.resize(n * n);

  QuadratureOptions q;
  q.abs_tol = 1e-13;
  q.rel_tol = 1e-9;

  for (int m = 0; m < n; ++m) {
    const double wm = omega[m];
    const double kappa_scale = bw / 4.0;  // band is (-2k, 2k)
    guard_band_edge(wm, kappa_scale);
    for (int i = 0; i < n; ++i) {
      std::vector<double> radii;
      std::vector<cplx> values;
      for (double frac : opts.excision_fractions) {
        const double delta = frac * bw;
        if (wm - delta <= spectral.w_min || wm + delta >= spectral.w_max)
          throw BandEdgeSingularity(
              "excision interval does not fit inside the band");
        auto f = [&](double w) { return spectral.s(i, m, w) / (w - wm); };
        cplx pv = integrate_sqrt_endpoints(f, spectral.w_min, wm - delta, q) +
                  integrate_sqrt_endpoints(f, wm + delta, spectral.w_max, q);
        radii.push_back(delta);
        values.push_back(pv);
      }
      const cplx pv0 = extrapolate_to_zero(radii, values, nullptr);
      cm.at(i, m) = M_PI * spectral.s(i, m, wm) - IU * pv0;
    }
  }
  return cm;
}

CouplingMatrix delta_from_kernel(const SpectralCorrelation& spectral,
                                 const std::vector<double>& omega,
                                 const KernelOptions& opts) {
  const int n = spectral.n;
  CouplingMatrix cm;
  cm.n = n;
  cm.provenance = CouplingMatrix::Provenance::kernel_quadrature;
  cm.delta.resize(n * n);

  QuadratureOptions q;
  q.abs_tol = 1e-13;
  q.rel_tol = 1e-10;

  for (int m = 0; m < n; ++m) {
    const double wm = omega[m];
    guard_band_edge(wm, (spectral.w_max - spectral.w_min) / 4.0);
    for (int i = 0; i < n; ++i) {
      std::vector<cplx> values;
      for (double eps : opts.epsilons) {
        // exact tau integral of Phi(tau) e^{(i w_m - eps) tau} per frequency
        auto f = [&](double w) {
          return spectral.s(i, m, w) / cplx(eps, w - wm);
        };
        values.push_back(
            integrate_sqrt_endpoints(f, spectral.w_min, spectral.w_max, q));
      }
      double correction = 0.0;
      const cplx v =
          extrapolate_to_zero(opts.epsilons, values, &correction);
      if (correction > 0.2 * std::abs(v) + 1e-9)
        throw ExtrapolationUnstable(
            "regularization extrapolation did not settle");
      cm.at(i, m) = v;
    }
  }
  return cm;
}

void reduced_rhs(const cplx* a, double t, const CouplingMatrix& delta,
                 const std::vector<double>& omega, double f_squared,
                 cplx* da) {
  const int n = delta.n;
  for (int i = 0; i < n; ++i) {
    cplx acc(0.0, 0.0);
    for (int m = 0; m < n; ++m)
      acc += delta.at(i, m) * a[m] * std::exp(IU * (omega[i] - omega[m]) * t);
    da[i] = -f_squared * acc;
  }
}

Trajectory integrate_reduced(const InitialExcitation& init,
                             const CouplingMatrix& delta,
                             const std::vector<double>& omega,
                             const CouplingSchedule& schedule, double t_max,
                             double dt, int sample_stride) {
  const int n = delta.n;
  if ((int)init.a0.size() != n)
    throw ParseError("initial excitation must have n_states amplitudes");
  if (dt <= 0.0 || dt > 0.05)
    throw StepTooLarge("reduced integrator requires 0 < dt*kappa <= 0.05");
  // same alignment contract as the lattice integrator
  auto misaligned = [dt](double len) {
    const double steps = len / dt;
    return std::abs(steps - std::llround(steps)) > 1e-9 * std::max(1.0, steps);
  };
  for (const auto& seg : schedule.segments)
    if (misaligned(seg.duration))
      throw ScheduleMisaligned("segment duration not a multiple of dt");
  if (misaligned(t_max))
    throw ScheduleMisaligned("t_max not a multiple of dt");

  std::vector<cplx> a = init.a0, k1(n), k2(n), k3(n), k4(n), tmp(n);
  const auto n_steps = static_cast<long long>(std::llround(t_max / dt));

  Trajectory traj;
  traj.n_states = n;
  traj.has_continuum = false;
  traj.omega = omega;
  traj.dt = dt;
  traj.sample_stride = sample_stride;

  auto record = [&](double t) {
    TrajectorySample s;
    s.t = t;
    s.a = a;
    s.p_c = 0.0;
    s.p_tot = 0.0;
    for (const cplx& z : a) s.p_tot += std::norm(z);
    traj.samples.push_back(std::move(s));
  };
  record(0.0);

  for (long long step = 0; step < n_steps; ++step) {
    const double t = step * dt;
    const double f2 = schedule.f_squared(t);
    reduced_rhs(a.data(), t, delta, omega, f2, k1.data());
    for (int i = 0; i < n; ++i) tmp[i] = a[i] + 0.5 * dt * k1[i];
    reduced_rhs(tmp.data(), t + 0.5 * dt, delta, omega, f2, k2.data());
    for (int i = 0; i < n; ++i) tmp[i] = a[i] + 0.5 * dt * k2[i];
    reduced_rhs(tmp.data(), t + 0.5 * dt, delta, omega, f2, k3.data());
    for (int i = 0; i < n; ++i) tmp[i] = a[i] + dt * k3[i];
    reduced_rhs(tmp.data(), t + dt, delta, omega, f2, k4.data());
    for (int i = 0; i < n; ++i)
      a[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if ((step + 1) % sample_stride == 0 || step + 1 == n_steps)
      record((step + 1) * dt);
  }
  return traj;
}

Trajectory integrate_reduced(const RunSpec& spec) {
  const ValidatedConfig vc = validate_config(spec.sys);
  const CouplingMatrix delta = delta_analytic_lattice(vc);
  Trajectory traj = integrate_reduced(spec.init, delta, spec.sys.omega,
                                      spec.schedule, spec.t_max, spec.dt,
                                      spec.sample_stride);
  traj.config_hash = config_hash(spec);
  return traj;
}

std::vector<EigenMode> eigen_analysis(const CouplingMatrix& delta,
                                      double bound_tol) {
  const std::vector<cplx> ev = dense_eigenvalues(delta.delta, delta.n);
  double max_abs = 0.0;
  for (const cplx& l : ev) max_abs = std::max(max_abs, std::abs(l));
  std::vector<EigenMode> modes;
  modes.reserve(ev.size());
  for (const cplx& l : ev)
    modes.push_back({l, l.real() < bound_tol * max_abs});
  return modes;
}

ProtocolReport protocol_conditions(const CouplingMatrix& delta,
                                   const std::vector<double>& omega, double T,
                                   const ProtocolThresholds& thr) {
  ProtocolReport r;
  for (const auto& mode : eigen_analysis(delta))
    r.max_abs_lambda = std::max(r.max_abs_lambda, std::abs(mode.lambda));

  const int n = (int)omega.size();
  r.degenerate = true;
  r.min_detuning = 0.0;
  bool first = true;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double dw = std::abs(omega[i] - omega[j]);
      r.degenerate = r.degenerate && (dw == 0.0);
      r.max_detuning = std::max(r.max_detuning, dw);
      if (first || dw < r.min_detuning) r.min_detuning = dw;
      first = false;
    }
  if (n < 2) {
    r.degenerate = true;
    r.rwa_ok = true;  // vacuous
  } else {
    r.rwa_ok = r.min_detuning > thr.rwa_factor * r.max_abs_lambda;
  }
  r.frozen_ok = (T * r.max_abs_lambda < thr.frozen_product) &&
                (T * r.max_detuning < thr.frozen_product);
  return r;
}

}  // namespace nhflip
