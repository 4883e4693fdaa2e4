#include "nhflip/observables.hpp"

#include <algorithm>
#include <cmath>

namespace nhflip {

double fidelity(const std::vector<cplx>& a0, const std::vector<cplx>& a_t) {
  double norm0 = 0.0;
  for (const cplx& z : a0) norm0 += std::norm(z);
  if (norm0 <= 0.0) throw ZeroInitialState("fidelity needs a nonzero a(0)");
  cplx overlap(0.0, 0.0);
  for (std::size_t i = 0; i < a0.size(); ++i)
    overlap += a0[i] * std::conj(a_t[i]);
  return std::abs(overlap) / norm0;
}

PopulationRecord populations(const TrajectorySample& sample) {
  PopulationRecord r;
  r.p_n.reserve(sample.a.size());
  double disc = 0.0;
  for (const cplx& z : sample.a) {
    r.p_n.push_back(std::norm(z));
    disc += std::norm(z);
  }
  r.p_c = sample.p_c;
  r.p_tot = disc + sample.p_c;
  return r;
}

ObservableSeries observable_series(const Trajectory& traj) {
  ObservableSeries s;
  s.n_states = traj.n_states;
  s.has_continuum = traj.has_continuum;
  s.p_n.resize(traj.n_states);
  const std::vector<cplx>& a0 = traj.samples.front().a;
  for (const auto& sample : traj.samples) {
    s.t.push_back(sample.t);
    for (int i = 0; i < traj.n_states; ++i)
      s.p_n[i].push_back(std::norm(sample.a[i]));
    s.p_c.push_back(sample.p_c);
    s.p_tot.push_back(sample.p_tot);
    s.fidelity.push_back(fidelity(a0, sample.a));
  }
  return s;
}

EchoReport echo_report(const Trajectory& traj, double T) {
  if (traj.samples.empty() || traj.t_end() < 2.0 * T - 1e-9)
    throw TrajectoryTooShort("echo report needs the trajectory up to 2T");
  const std::vector<cplx>& a0 = traj.samples.front().a;
  EchoReport r;
  r.f_at_2t = fidelity(a0, traj.samples[traj.index_at(2.0 * T)].a);
  r.f_peak = -1.0;
  for (const auto& sample : traj.samples) {
    if (sample.t < T - 1e-12 || sample.t > 2.0 * T + 1e-12) continue;
    const double f = fidelity(a0, sample.a);
    if (f > r.f_peak) {
      r.f_peak = f;
      r.t_of_peak = sample.t;
    }
  }
  return r;
}

bool secular_growth_check(const std::vector<double>& t,
                          const std::vector<double>& p_c, double t_flip,
                          double window, double slack) {
  // windowed means, so segment-scale ripples do not mask the secular trend,
  // while saturation or back-transfer after the flip fails the check
  std::vector<double> means;
  std::size_t begin = 0;
  while (begin < t.size() && t[begin] < t_flip) ++begin;
  if (begin >= t.size()) return false;

  std::size_t lo = begin;
  double acc = 0.0;
  std::size_t count = 0;
  for (std::size_t i = begin; i < t.size(); ++i) {
    acc += p_c[i];
    ++count;
    while (t[i] - t[lo] > window) {
      acc -= p_c[lo];
      --count;
      ++lo;
    }
    means.push_back(acc / count);
  }
  for (std::size_t i = 1; i < means.size(); ++i)
    if (means[i] < means[i - 1] - slack) return false;

  // saturation guard: growth over the second half of the interval must stay
  // comparable to the first half (a secular trend is at least linear)
  const double t_mid = 0.5 * (t[begin] + t.back());
  std::size_t mid = begin;
  while (mid < t.size() && t[mid] < t_mid) ++mid;
  if (mid >= t.size()) return false;
  const double gain1 = means[mid - begin] - means.front();
  const double gain2 = means.back() - means[mid - begin];
  return gain1 + gain2 > slack && gain2 >= 0.4 * gain1 - slack;
}

double frozen_deviation(const Trajectory& traj, double horizon) {
  if (traj.t_end() < horizon - 1e-9)
    throw TrajectoryTooShort("frozen_deviation horizon exceeds trajectory");
  const auto p0 = populations(traj.samples.front()).p_n;
  double dev = 0.0;
  for (const auto& sample : traj.samples) {
    if (sample.t > horizon + 1e-12) break;
    for (int i = 0; i < traj.n_states; ++i)
      dev = std::max(dev, std::abs(std::norm(sample.a[i]) - p0[i]));
  }
  return dev;
}

}  // namespace nhflip
