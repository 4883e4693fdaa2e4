#pragma once

#include <vector>

#include "nhflip/config.hpp"
#include "nhflip/trajectory.hpp"
#include "nhflip/types.hpp"

namespace nhflip {

// Discrete + truncated-lattice state at one instant.  Layout is a single
// contiguous complex vector: [c_0 .. c_{N-1}, b_{-H} .. b_{+H}] with
// M = 2H + 1 lattice sites; site alpha lives at data[N + H + alpha].
struct FullState {
  std::vector<cplx> data;
  int n = 0;  // discrete states
  int m = 0;  // lattice sites, odd
  double t = 0.0;

  int half_width() const { return (m - 1) / 2; }
  cplx& c(int i) { return data[i]; }
  const cplx& c(int i) const { return data[i]; }
  cplx& b(int alpha) { return data[n + half_width() + alpha]; }
  const cplx& b(int alpha) const { return data[n + half_width() + alpha]; }
};

// Smallest odd M keeping the ballistic wavefront (speed 2 kappa) away from
// the hard wall until t_max, with a safety buffer per side.
int lattice_size_for(double t_max, const SystemConfig& config,
                     int buffer_sites = 50);

struct LatticeOptions {
  double dt = 0.01;
  int sample_stride = 10;
  int buffer_sites = 50;
  int lattice_sites = 0;  // 0 = derive from t_max via lattice_size_for
};

class LatticeSimulator {
 public:
  LatticeSimulator(ValidatedConfig config, CouplingSchedule schedule,
                   LatticeOptions opts = {});

  // d(state)/dt at coupling value f, written into dy (same layout as y);
  // m is the lattice site count of the state
  void rhs(const cplx* y, cplx* dy, int m, cplx f) const;

  FullState make_initial(const InitialExcitation& init, double t_max) const;
  Trajectory integrate(const InitialExcitation& init, double t_max) const;

  int lattice_sites_for(double t_max) const;

 private:
  ValidatedConfig config_;
  CouplingSchedule schedule_;
  LatticeOptions opts_;
};

// Convenience wrapper used by the experiment runner.
Trajectory integrate_full(const RunSpec& spec, const LatticeOptions& opts = {});

}  // namespace nhflip
