#include "nhflip/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <mutex>
#include <sstream>
#include <thread>

#include "nhflip/io.hpp"
#include "nhflip/kernels.hpp"
#include "nhflip/lattice.hpp"

namespace nhflip {

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// single hermitian segment followed by a non-hermitian one, equal lengths
std::optional<double> flip_time(const CouplingSchedule& s) {
  if (s.repeat || s.segments.size() != 2) return std::nullopt;
  if (s.segments[0].non_hermitian || !s.segments[1].non_hermitian)
    return std::nullopt;
  if (s.segments[0].duration != s.segments[1].duration) return std::nullopt;
  return s.segments[0].duration;
}

std::optional<double> first_nh_start(const CouplingSchedule& s) {
  double t = 0.0;
  for (const auto& seg : s.segments) {
    if (seg.non_hermitian) return t;
    t += seg.duration;
  }
  return std::nullopt;
}

}  // namespace

std::string Verdict::to_text() const {
  std::ostringstream os;
  auto line = [&os](const char* k, const std::string& v) {
    os << k << ": " << v << "\n";
  };
  auto num = [&](const char* k, double v) { line(k, g17(v)); };
  auto flag = [&](const char* k, bool v) { line(k, v ? "true" : "false"); };
  flag("has_echo", has_echo);
  if (has_echo) {
    num("F_at_2T_full", f_at_2t_full);
    num("F_at_2T_reduced", f_at_2t_reduced);
    num("F_peak_after_flip", f_peak_after_flip);
    num("t_of_peak", t_of_peak);
  }
  flag("secular_growth", secular_growth);
  num("frozen_deviation", frozen_dev);
  num("reduced_full_max_gap", reduced_full_max_gap);
  num("max_hermitian_drift", max_hermitian_drift);
  num("P_c_at_flip", p_c_at_flip);
  num("P_c_end", p_c_end);
  line("lattice_sites", std::to_string(lattice_sites));
  flag("degenerate", protocol.degenerate);
  flag("rwa_ok", protocol.rwa_ok);
  flag("frozen_ok", protocol.frozen_ok);
  num("max_abs_lambda", protocol.max_abs_lambda);
  num("weak_coupling_ratio", weak_coupling_ratio);
  flag("weak_coupling_warning", weak_coupling_warning);
  return os.str();
}

RunResult run_experiment(const RunSpec& spec, const std::string& out_dir) {
  const ValidatedConfig vc = validate_config(spec.sys);

  RunResult res;
  res.full = integrate_full(spec);
  res.reduced = integrate_reduced(spec);

  const ObservableSeries sf = observable_series(res.full);
  const ObservableSeries sr = observable_series(res.reduced);

  Verdict& v = res.verdict;
  v.lattice_sites = res.full.lattice_sites;
  v.max_hermitian_drift = res.full.max_hermitian_drift;
  v.weak_coupling_ratio = vc.weak_coupling_ratio;
  v.weak_coupling_warning = vc.weak_coupling_warning;

  const CouplingMatrix delta = delta_analytic_lattice(vc);
  const auto t_flip = flip_time(spec.schedule);
  v.protocol = protocol_conditions(delta, spec.sys.omega,
                                   t_flip.value_or(spec.schedule.period() / 2));

  // gap between reduced and full discrete populations on shared sample times
  const std::size_t n_samples =
      std::min(res.full.samples.size(), res.reduced.samples.size());
  for (std::size_t s = 0; s < n_samples; ++s)
    for (int i = 0; i < spec.sys.n_states; ++i)
      v.reduced_full_max_gap =
          std::max(v.reduced_full_max_gap,
                   std::abs(sf.p_n[i][s] - sr.p_n[i][s]));

  if (t_flip && spec.t_max >= 2.0 * (*t_flip) - 1e-9) {
    v.has_echo = true;
    const EchoReport ef = echo_report(res.full, *t_flip);
    const EchoReport er = echo_report(res.reduced, *t_flip);
    v.f_at_2t_full = ef.f_at_2t;
    v.f_at_2t_reduced = er.f_at_2t;
    v.f_peak_after_flip = ef.f_peak;
    v.t_of_peak = ef.t_of_peak;
  }

  const auto nh_start = first_nh_start(spec.schedule);
  if (nh_start) {
    v.secular_growth = secular_growth_check(sf.t, sf.p_c, *nh_start);
    v.p_c_at_flip = sf.p_c[res.full.index_at(*nh_start)];
  }
  v.p_c_end = sf.p_c.back();
  v.frozen_dev = frozen_deviation(res.full, spec.t_max);

  if (!out_dir.empty()) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoFailure("cannot create output directory '" + out_dir + "'");
    auto p = [&](const char* name) { return (fs::path(out_dir) / name).string(); };

    write_file(p("full.csv"), trajectory_csv(res.full, true));
    write_file(p("reduced.csv"), trajectory_csv(res.reduced, true));

    std::ostringstream fcsv;
    fcsv << "t,F_full,F_reduced\n";
    for (std::size_t s = 0; s < n_samples; ++s)
      fcsv << g17(sf.t[s]) << "," << g17(sf.fidelity[s]) << ","
           << g17(sr.fidelity[s]) << "\n";
    write_file(p("fidelity.csv"), fcsv.str());

    write_file(p("verdict.txt"), v.to_text());

    std::ostringstream manifest;
    manifest << "tool: " << kToolVersion << "\n"
             << "kernel_backend: " << kernels::active_backend().name << "\n"
             << "lattice_sites: " << res.full.lattice_sites << "\n"
             << "config_hash: " << config_hash(spec) << "\n"
             << "--- resolved config ---\n"
             << serialize_run_spec(spec);
    write_file(p("manifest.txt"), manifest.str());

    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                            "#8c564b", "#e377c2"};
    std::vector<PlotSeries> pops;
    for (int i = 0; i < spec.sys.n_states; ++i)
      pops.push_back({"P_" + std::to_string(i + 1) + " (full)",
                      colors[i % 6], &sf.t, &sf.p_n[i]});
    write_file(p("populations.svg"),
               svg_line_plot("discrete-state populations", pops));

    std::vector<PlotSeries> cont = {{"P_c", "#1f77b4", &sf.t, &sf.p_c},
                                    {"P_tot", "#d62728", &sf.t, &sf.p_tot}};
    write_file(p("continuum.svg"),
               svg_line_plot("continuum and total population", cont));

    std::vector<PlotSeries> fid = {{"F (full)", "#1f77b4", &sf.t, &sf.fidelity},
                                   {"F (reduced)", "#d62728", &sr.t,
                                    &sr.fidelity}};
    write_file(p("fidelity.svg"), svg_line_plot("fidelity", fid));
  }
  return res;
}

RunSpec apply_sweep_value(const RunSpec& base, const std::string& parameter,
                          double value) {
  RunSpec spec = base;
  if (parameter == "T") {
    spec.schedule = CouplingSchedule::flip_at(value);
    spec.t_max = 2.0 * value;
  } else if (parameter == "detuning_scale") {
    double max_abs = 0.0;
    for (double w : base.sys.omega) max_abs = std::max(max_abs, std::abs(w));
    for (int i = 0; i < base.sys.n_states; ++i) {
      double pattern;
      if (max_abs > 0.0) {
        pattern = base.sys.omega[i] / max_abs;
      } else {
        // default detuning shape: 0, 1, -1/2, 1/4, ...
        pattern = (i == 0) ? 0.0 : std::pow(-0.5, i - 1);
      }
      spec.sys.omega[i] = value * pattern;
    }
  } else if (parameter == "coupling_scale") {
    for (double& k : spec.sys.kappa_n) k *= value;
  } else {
    throw ParseError("unknown sweep parameter '" + parameter +
                     "' (expected T, detuning_scale, coupling_scale)");
  }
  return spec;
}

std::vector<SweepRow> sweep(const RunSpec& base, const std::string& parameter,
                            const std::vector<double>& values,
                            const std::string& out_dir, int workers) {
  if (values.empty()) throw ParseError("sweep requires at least one value");
  std::vector<SweepRow> rows(values.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string first_error;
  ErrorKind first_kind = ErrorKind::numerical;
  std::mutex err_mutex;

  auto work = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= values.size() || failed.load()) return;
      try {
        const RunSpec spec = apply_sweep_value(base, parameter, values[i]);
        std::string row_dir;
        if (!out_dir.empty()) {
          char name[32];
          std::snprintf(name, sizeof name, "row_%03zu", i);
          row_dir = (std::filesystem::path(out_dir) / name).string();
        }
        rows[i].value = values[i];
        rows[i].verdict = run_experiment(spec, row_dir).verdict;
      } catch (const Error& e) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!failed.exchange(true)) {
          first_error = e.what();
          first_kind = e.kind();
        }
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!failed.exchange(true)) first_error = e.what();
      }
    }
  };

  const int nw = std::max(1, std::min<int>(workers, (int)values.size()));
  std::vector<std::thread> pool;
  for (int w = 0; w < nw; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (failed.load()) throw Error(first_kind, first_error);

  if (!out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    write_file((std::filesystem::path(out_dir) / "sweep_summary.csv").string(),
               sweep_summary_csv(parameter, rows));
  }
  return rows;
}

std::string sweep_summary_csv(const std::string& parameter,
                              const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << parameter << ",F_at_2T_full,F_at_2T_reduced,frozen_deviation\n";
  for (const auto& r : rows)
    os << g17(r.value) << "," << g17(r.verdict.f_at_2t_full) << ","
       << g17(r.verdict.f_at_2t_reduced) << "," << g17(r.verdict.frozen_dev)
       << "\n";
  return os.str();
}

}  // namespace nhflip
