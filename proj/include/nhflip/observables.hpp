#pragma once

#include <vector>

#include "nhflip/trajectory.hpp"
#include "nhflip/types.hpp"

namespace nhflip {

// Flattened view of a trajectory for export and verdicts.
struct ObservableSeries {
  std::vector<double> t;
  std::vector<std::vector<double>> p_n;  // [state][sample]
  std::vector<double> p_c;
  std::vector<double> p_tot;
  std::vector<double> fidelity;  // vs the trajectory's own initial state
  int n_states = 0;
  bool has_continuum = false;
};

// F = |sum_n a_n(0) a_n^*(t)| / sum_n |a_n(0)|^2.  Normalized against the
// initial state only, so F can exceed 1 under non-unitary dynamics.
double fidelity(const std::vector<cplx>& a0, const std::vector<cplx>& a_t);

struct PopulationRecord {
  std::vector<double> p_n;
  double p_c = 0.0;
  double p_tot = 0.0;
};

PopulationRecord populations(const TrajectorySample& sample);

ObservableSeries observable_series(const Trajectory& traj);

struct EchoReport {
  double f_at_2t = 0.0;
  double t_of_peak = 0.0;  // where F peaks in [T, 2T]
  double f_peak = 0.0;
};

EchoReport echo_report(const Trajectory& traj, double T);

// True iff the continuum population keeps growing after the flip: windowed
// averages non-decreasing (1e-9 slack) and the second half of the interval
// gains at least 0.4x the first half, so saturating transfer does not count.
bool secular_growth_check(const std::vector<double>& t,
                          const std::vector<double>& p_c, double t_flip,
                          double window = 10.0, double slack = 1e-9);

// Worst discrete-population excursion from the initial values over [0, horizon].
double frozen_deviation(const Trajectory& traj, double horizon);

}  // namespace nhflip
