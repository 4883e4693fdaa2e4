#pragma once

#include <cstdint>
#include <vector>

#include "nhflip/types.hpp"

namespace nhflip {

// One snapshot of the discrete subsystem in the interaction picture:
// a_n(t) = c_n(t) exp(+i omega_n t), so |a_n| = |c_n|.
struct TrajectorySample {
  double t = 0.0;
  std::vector<cplx> a;  // N interaction-picture amplitudes
  double p_c = 0.0;     // continuum population (0 for the reduced model)
  double p_tot = 0.0;   // sum of discrete populations + p_c
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  int n_states = 0;
  bool has_continuum = false;
  std::vector<double> omega;  // to recover Schroedinger-picture c_n

  // metadata
  double dt = 0.0;
  int sample_stride = 1;
  std::uint64_t config_hash = 0;
  int lattice_sites = 0;  // M, full model only
  // worst total-population drift observed across hermitian segments
  double max_hermitian_drift = 0.0;

  // full model only: terminal lattice amplitudes (for truncation checks)
  std::vector<cplx> final_b;

  double t_end() const { return samples.empty() ? 0.0 : samples.back().t; }
  // nearest sample index for time t (samples are uniformly strided)
  std::size_t index_at(double t) const;
};

}  // namespace nhflip
