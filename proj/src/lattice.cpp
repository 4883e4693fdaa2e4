#include "nhflip/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nhflip/kernels.hpp"

namespace nhflip {

std::size_t Trajectory::index_at(double t) const {
  const double stride_t = dt * sample_stride;
  auto i = static_cast<std::size_t>(std::llround(t / stride_t));
  return std::min(i, samples.size() - 1);
}

int lattice_size_for(double t_max, const SystemConfig& config,
                     int buffer_sites) {
  if (t_max <= 0.0) throw ParseError("t_max must be > 0");
  // ballistic wavefront travels at most 2*kappa*t sites from the center
  const int reach = static_cast<int>(std::ceil(2.0 * config.kappa * t_max));
  int m = 2 * reach + 2 * config.max_abs_site() + 2 * buffer_sites;
  if (m % 2 == 0) ++m;
  return m;
}

namespace {

void check_alignment(const CouplingSchedule& schedule, double dt,
                     double t_max) {
  auto misaligned = [dt](double len) {
    const double steps = len / dt;
    return std::abs(steps - std::llround(steps)) > 1e-9 * std::max(1.0, steps);
  };
  for (const auto& seg : schedule.segments)
    if (misaligned(seg.duration)) {
      std::ostringstream os;
      os << "segment duration " << seg.duration
         << " is not an integer multiple of dt = " << dt;
      throw ScheduleMisaligned(os.str());
    }
  if (misaligned(t_max))
    throw ScheduleMisaligned("t_max is not an integer multiple of dt");
}

}  // namespace

LatticeSimulator::LatticeSimulator(ValidatedConfig config,
                                   CouplingSchedule schedule,
                                   LatticeOptions opts)
    : config_(std::move(config)), schedule_(std::move(schedule)), opts_(opts) {
  if (opts_.dt * config_.sys.kappa > 0.05 + 1e-12) {
    std::ostringstream os;
    os << "dt * kappa = " << opts_.dt * config_.sys.kappa << " exceeds 0.05";
    throw StepTooLarge(os.str());
  }
}

int LatticeSimulator::lattice_sites_for(double t_max) const {
  if (opts_.lattice_sites > 0) return opts_.lattice_sites;
  return lattice_size_for(t_max, config_.sys, opts_.buffer_sites);
}

void LatticeSimulator::rhs(const cplx* y, cplx* dy, int m, cplx f) const {
  const auto& sys = config_.sys;
  const int n = sys.n_states;
  const int half = (m - 1) / 2;

  kernels::active_backend().hop_rhs(y + n, dy + n, m, sys.kappa);

  const cplx i_f = IU * f;
  for (int k = 0; k < n; ++k) {
    const int idx = n + half + sys.alpha_n[k];
    dy[k] = -IU * sys.omega[k] * y[k] + i_f * sys.kappa_n[k] * y[idx];
    dy[idx] += i_f * sys.kappa_n[k] * y[k];
  }
}

FullState LatticeSimulator::make_initial(const InitialExcitation& init,
                                         double t_max) const {
  const int n = config_.sys.n_states;
  if ((int)init.a0.size() != n)
    throw ParseError("initial excitation must have n_states amplitudes");
  FullState s;
  s.n = n;
  s.m = lattice_sites_for(t_max);
  const int half = (s.m - 1) / 2;
  if (config_.sys.max_abs_site() >= half)
    throw ParseError("attachment sites do not fit inside the truncated lattice");
  s.data.assign(n + s.m, cplx(0.0, 0.0));
  for (int k = 0; k < n; ++k) s.data[k] = init.a0[k];  // c_n(0) = a_n(0)
  s.t = 0.0;
  return s;
}

Trajectory LatticeSimulator::integrate(const InitialExcitation& init,
                                       double t_max) const {
  check_alignment(schedule_, opts_.dt, t_max);
  const auto& sys = config_.sys;
  const int n = sys.n_states;
  const auto& kern = kernels::active_backend();

  FullState state = make_initial(init, t_max);
  const int m = state.m;
  const std::size_t dim = state.data.size();
  std::vector<cplx> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);

  const double dt = opts_.dt;
  const auto n_steps = static_cast<long long>(std::llround(t_max / dt));

  Trajectory traj;
  traj.n_states = n;
  traj.has_continuum = true;
  traj.omega = sys.omega;
  traj.dt = dt;
  traj.sample_stride = opts_.sample_stride;
  traj.lattice_sites = state.m;

  auto record = [&](double t) {
    TrajectorySample s;
    s.t = t;
    s.a.resize(n);
    double p_disc = 0.0;
    for (int k = 0; k < n; ++k) {
      s.a[k] = state.data[k] * std::exp(IU * sys.omega[k] * t);
      p_disc += std::norm(state.data[k]);
    }
    s.p_c = kern.norm_sq(state.data.data() + n, state.m);
    s.p_tot = p_disc + s.p_c;
    traj.samples.push_back(std::move(s));
  };

  record(0.0);
  double hermitian_p0 = traj.samples.front().p_tot;
  bool prev_hermitian = false;

  for (long long step = 0; step < n_steps; ++step) {
    const double t = step * dt;
    const cplx f = schedule_.eval(t);
    const bool hermitian = (f.imag() == 0.0);
    if (hermitian && !prev_hermitian)
      hermitian_p0 = kern.norm_sq(state.data.data(), dim);

    rhs(state.data.data(), k1.data(), m, f);
    tmp = state.data;
    kern.axpy_real(tmp.data(), k1.data(), dt / 2.0, dim);
    rhs(tmp.data(), k2.data(), m, f);
    tmp = state.data;
    kern.axpy_real(tmp.data(), k2.data(), dt / 2.0, dim);
    rhs(tmp.data(), k3.data(), m, f);
    tmp = state.data;
    kern.axpy_real(tmp.data(), k3.data(), dt, dim);
    rhs(tmp.data(), k4.data(), m, f);
    kern.rk4_combine(state.data.data(), state.data.data(), k1.data(), k2.data(),
                     k3.data(), k4.data(), dt, dim);
    state.t = (step + 1) * dt;

    const bool sampled = ((step + 1) % opts_.sample_stride == 0) ||
                         (step + 1 == n_steps);
    if (sampled) record(state.t);

    // population drift audit across hermitian stretches
    if (hermitian) {
      const double p = kern.norm_sq(state.data.data(), dim);
      traj.max_hermitian_drift =
          std::max(traj.max_hermitian_drift, std::abs(p - hermitian_p0));
    }
    prev_hermitian = hermitian;
  }

  traj.final_b.assign(state.data.begin() + n, state.data.end());
  return traj;
}

Trajectory integrate_full(const RunSpec& spec, const LatticeOptions& opts) {
  LatticeOptions o = opts;
  o.dt = spec.dt;
  o.sample_stride = spec.sample_stride;
  LatticeSimulator sim(validate_config(spec.sys), spec.schedule, o);
  Trajectory traj = sim.integrate(spec.init, spec.t_max);
  traj.config_hash = config_hash(spec);
  return traj;
}

}  // namespace nhflip
