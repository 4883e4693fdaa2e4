#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nhflip/types.hpp"

namespace nhflip {

// Static problem instance: N discrete states side-coupled to a tight-binding
// chain.  All frequencies and rates are stored in units of the lattice hopping
// kappa; times are in units of 1/kappa.
struct SystemConfig {
  int n_states = 0;
  std::vector<double> omega;    // frequency offsets from band center
  std::vector<double> kappa_n;  // state-lattice hopping amplitudes
  std::vector<int> alpha_n;     // lattice attachment sites
  double kappa = 1.0;           // lattice hopping, sets the unit scale

  int max_abs_site() const;
};

struct ValidatedConfig {
  SystemConfig sys;
  // max_n kappa_n / kappa; the reduced model assumes this is small
  double weak_coupling_ratio = 0.0;
  bool weak_coupling_warning = false;
};

// Rejects invariant violations; warns (flag, not error) when the coupling is
// too strong for the markovian reduction to be trusted.
ValidatedConfig validate_config(const SystemConfig& config,
                                double warn_threshold = 0.2);

// Piecewise-constant coupling prefactor f(t) over {1, i}.
struct CouplingSchedule {
  struct Segment {
    double duration = 0.0;
    bool non_hermitian = false;  // f = i on non-hermitian segments, else 1
  };
  std::vector<Segment> segments;
  bool repeat = false;

  double period() const;  // sum of segment durations

  // Left-endpoint ownership: a segment owns the instant it starts at.
  // Throws TimeBeyondSchedule past the end of a non-repeating schedule.
  cplx eval(double t) const;
  // f^2(t), exactly +1 or -1.
  double f_squared(double t) const;

  static CouplingSchedule flip_at(double t_flip);
  static CouplingSchedule alternating(double half_period);
  static CouplingSchedule hermitian_only(double duration);
};

struct InitialExcitation {
  std::vector<cplx> a0;  // discrete-state amplitudes; continuum starts empty
};

// One fully specified run: instance + protocol + integration controls.
struct RunSpec {
  SystemConfig sys;
  CouplingSchedule schedule;
  InitialExcitation init;
  double t_max = 0.0;
  double dt = 0.01;
  int sample_stride = 10;
};

// Flat key = value config file (lists comma-separated, complex as "(re,im)").
RunSpec parse_run_spec(const std::string& text);
RunSpec load_run_spec(const std::string& path);
std::string serialize_run_spec(const RunSpec& spec);

std::uint64_t config_hash(const RunSpec& spec);

}  // namespace nhflip
