#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nhflip/config.hpp"
#include "nhflip/effective.hpp"
#include "nhflip/observables.hpp"

namespace nhflip {

inline constexpr const char* kToolVersion = "nhflip 0.1.0";

// Everything the acceptance checks and the CLI verdict need from one run.
struct Verdict {
  double f_at_2t_full = 0.0;
  double f_at_2t_reduced = 0.0;
  double f_peak_after_flip = 0.0;
  double t_of_peak = 0.0;
  bool has_echo = false;  // schedule is a single hermitian->non-hermitian flip
  bool secular_growth = false;
  double frozen_dev = 0.0;
  double reduced_full_max_gap = 0.0;
  double max_hermitian_drift = 0.0;
  double p_c_at_flip = 0.0;
  double p_c_end = 0.0;
  int lattice_sites = 0;
  ProtocolReport protocol;
  double weak_coupling_ratio = 0.0;
  bool weak_coupling_warning = false;

  std::string to_text() const;  // key: value lines
};

struct RunResult {
  Verdict verdict;
  Trajectory full;
  Trajectory reduced;
};

// Integrates both models, derives observables; out_dir empty = no files.
RunResult run_experiment(const RunSpec& spec, const std::string& out_dir);

struct SweepRow {
  double value = 0.0;
  Verdict verdict;
};

// parameter is one of: T, detuning_scale, coupling_scale
std::vector<SweepRow> sweep(const RunSpec& base, const std::string& parameter,
                            const std::vector<double>& values,
                            const std::string& out_dir, int workers = 1);

std::string sweep_summary_csv(const std::string& parameter,
                              const std::vector<SweepRow>& rows);

// the per-row spec modification, exposed for tests
RunSpec apply_sweep_value(const RunSpec& base, const std::string& parameter,
                          double value);

}  // namespace nhflip
