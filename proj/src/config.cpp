#include "nhflip/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace nhflip {

int SystemConfig::max_abs_site() const {
  int m = 0;
  for (int a : alpha_n) m = std::max(m, std::abs(a));
  return m;
}

ValidatedConfig validate_config(const SystemConfig& config,
                                double warn_threshold) {
  const int n = config.n_states;
  if (n < 1) throw ParseError("n_states must be a positive integer");
  if ((int)config.omega.size() != n || (int)config.kappa_n.size() != n ||
      (int)config.alpha_n.size() != n)
    throw ParseError("omega, kappa_n, alpha_n must each have n_states entries");
  if (!(config.kappa > 0.0))
    throw NonPositiveHopping("lattice hopping kappa must be > 0");

  for (int i = 0; i < n; ++i) {
    if (!(std::abs(config.omega[i]) < 2.0 * config.kappa)) {
      std::ostringstream os;
      os << "omega[" << i << "] = " << config.omega[i]
         << " is not embedded in the band (-2k, 2k), kappa = " << config.kappa;
      throw EmbeddingViolation(os.str());
    }
    if (config.kappa_n[i] < 0.0)
      throw NonPositiveHopping("kappa_n entries must be >= 0");
  }
  std::set<int> sites(config.alpha_n.begin(), config.alpha_n.end());
  if ((int)sites.size() != n)
    throw DuplicateSite("attachment sites alpha_n must be pairwise distinct");
  if (std::all_of(config.kappa_n.begin(), config.kappa_n.end(),
                  [](double k) { return k == 0.0; }))
    throw NonPositiveHopping("at least one kappa_n must be > 0");

  ValidatedConfig v;
  v.sys = config;
  for (double k : config.kappa_n)
    v.weak_coupling_ratio = std::max(v.weak_coupling_ratio, k / config.kappa);
  v.weak_coupling_warning = v.weak_coupling_ratio > warn_threshold;
  return v;
}

double CouplingSchedule::period() const {
  double p = 0.0;
  for (const auto& s : segments) p += s.duration;
  return p;
}

cplx CouplingSchedule::eval(double t) const {
  if (t < 0.0) throw TimeBeyondSchedule("t < 0");
  if (segments.empty()) throw TimeBeyondSchedule("empty schedule");
  double tt = t;
  const double p = period();
  if (repeat) {
    tt = std::fmod(t, p);
  } else if (t >= p) {
    std::ostringstream os;
    os << "t = " << t << " beyond schedule end " << p;
    throw TimeBeyondSchedule(os.str());
  }
  double start = 0.0;
  for (const auto& s : segments) {
    if (tt < start + s.duration)
      return s.non_hermitian ? cplx(0.0, 1.0) : cplx(1.0, 0.0);
    start += s.duration;
  }
  // fmod rounding can land exactly on the period; that is t = 0 again
  return segments.front().non_hermitian ? cplx(0.0, 1.0) : cplx(1.0, 0.0);
}

double CouplingSchedule::f_squared(double t) const {
  const cplx f = eval(t);
  return f.imag() != 0.0 ? -1.0 : 1.0;
}

CouplingSchedule CouplingSchedule::flip_at(double t_flip) {
  return CouplingSchedule{{{t_flip, false}, {t_flip, true}}, false};
}

CouplingSchedule CouplingSchedule::alternating(double half_period) {
  return CouplingSchedule{{{half_period, false}, {half_period, true}}, true};
}

CouplingSchedule CouplingSchedule::hermitian_only(double duration) {
  return CouplingSchedule{{{duration, false}}, false};
}

namespace {

struct Line {
  int number;
  std::string key;
  std::string value;
};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

[[noreturn]] void parse_fail(int line, const std::string& msg) {
  std::ostringstream os;
  os << "line " << line << ": " << msg;
  throw ParseError(os.str());
}

std::vector<std::string> split_list(const std::string& s) {
  // comma-separated, but commas inside (...) belong to a complex literal
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  cur = trim(cur);
  if (!cur.empty()) out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, int line) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) parse_fail(line, "trailing characters in number '" + s + "'");
    return v;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    parse_fail(line, "cannot parse number '" + s + "'");
  }
}

int parse_int(const std::string& s, int line) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) parse_fail(line, "trailing characters in integer '" + s + "'");
    return v;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    parse_fail(line, "cannot parse integer '" + s + "'");
  }
}

cplx parse_complex(const std::string& s, int line) {
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    parse_fail(line, "complex value must look like (re,im), got '" + s + "'");
  auto inner = s.substr(1, s.size() - 2);
  auto comma = inner.find(',');
  if (comma == std::string::npos)
    parse_fail(line, "complex value must look like (re,im), got '" + s + "'");
  return {parse_double(trim(inner.substr(0, comma)), line),
          parse_double(trim(inner.substr(comma + 1)), line)};
}

}  // namespace

RunSpec parse_run_spec(const std::string& text) {
  RunSpec spec;
  bool have_n = false, have_kn = false, have_alpha = false, have_a0 = false,
       have_sched = false, have_tmax = false, have_omega = false;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    raw = trim(raw);
    if (raw.empty()) continue;
    auto eq = raw.find('=');
    if (eq == std::string::npos) parse_fail(lineno, "expected 'key = value'");
    const std::string key = trim(raw.substr(0, eq));
    const std::string val = trim(raw.substr(eq + 1));
    if (val.empty()) parse_fail(lineno, "empty value for key '" + key + "'");

    if (key == "n_states") {
      spec.sys.n_states = parse_int(val, lineno);
      have_n = true;
    } else if (key == "omega") {
      spec.sys.omega.clear();
      for (auto& f : split_list(val)) spec.sys.omega.push_back(parse_double(f, lineno));
      have_omega = true;
    } else if (key == "kappa_n") {
      spec.sys.kappa_n.clear();
      for (auto& f : split_list(val)) spec.sys.kappa_n.push_back(parse_double(f, lineno));
      have_kn = true;
    } else if (key == "alpha_n") {
      spec.sys.alpha_n.clear();
      for (auto& f : split_list(val)) spec.sys.alpha_n.push_back(parse_int(f, lineno));
      have_alpha = true;
    } else if (key == "kappa") {
      spec.sys.kappa = parse_double(val, lineno);
    } else if (key == "schedule") {
      spec.schedule.segments.clear();
      for (auto& f : split_list(val)) {
        std::istringstream seg(f);
        std::string dur, kind;
        seg >> dur >> kind;
        if (dur.empty() || kind.empty() || !(seg >> std::ws).eof())
          parse_fail(lineno, "schedule segment must be '<duration> H|NH', got '" + f + "'");
        CouplingSchedule::Segment s;
        s.duration = parse_double(dur, lineno);
        if (s.duration <= 0.0) parse_fail(lineno, "segment duration must be > 0");
        if (kind == "H") s.non_hermitian = false;
        else if (kind == "NH") s.non_hermitian = true;
        else parse_fail(lineno, "segment kind must be H or NH, got '" + kind + "'");
        spec.schedule.segments.push_back(s);
      }
      have_sched = true;
    } else if (key == "repeat") {
      if (val == "true") spec.schedule.repeat = true;
      else if (val == "false") spec.schedule.repeat = false;
      else parse_fail(lineno, "repeat must be true or false");
    } else if (key == "a0") {
      spec.init.a0.clear();
      for (auto& f : split_list(val)) spec.init.a0.push_back(parse_complex(f, lineno));
      have_a0 = true;
    } else if (key == "t_max") {
      spec.t_max = parse_double(val, lineno);
      have_tmax = true;
    } else if (key == "dt") {
      spec.dt = parse_double(val, lineno);
    } else if (key == "sample_stride") {
      spec.sample_stride = parse_int(val, lineno);
    } else {
      parse_fail(lineno, "unknown key '" + key + "'");
    }
  }

  if (!have_n) throw ParseError("missing key n_states");
  if (!have_kn) throw ParseError("missing key kappa_n");
  if (!have_alpha) throw ParseError("missing key alpha_n");
  if (!have_sched) throw ParseError("missing key schedule");
  if (!have_a0) throw ParseError("missing key a0");
  if (!have_tmax) throw ParseError("missing key t_max");
  if (!have_omega) spec.sys.omega.assign(spec.sys.n_states, 0.0);
  if ((int)spec.init.a0.size() != spec.sys.n_states)
    throw ParseError("a0 must have n_states entries");
  if (spec.t_max <= 0.0) throw ParseError("t_max must be > 0");
  if (spec.dt <= 0.0) throw ParseError("dt must be > 0");
  if (spec.sample_stride < 1) throw ParseError("sample_stride must be >= 1");
  return spec;
}

RunSpec load_run_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_spec(buf.str());
}

namespace {
std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace

std::string serialize_run_spec(const RunSpec& spec) {
  std::ostringstream os;
  os << "n_states = " << spec.sys.n_states << "\n";
  auto list = [&os](const char* key, auto&& fmt, const auto& v) {
    os << key << " = ";
    for (std::size_t i = 0; i < v.size(); ++i)
      os << (i ? ", " : "") << fmt(v[i]);
    os << "\n";
  };
  list("omega", fmt_g, spec.sys.omega);
  list("kappa_n", fmt_g, spec.sys.kappa_n);
  list("alpha_n", [](int a) { return std::to_string(a); }, spec.sys.alpha_n);
  os << "kappa = " << fmt_g(spec.sys.kappa) << "\n";
  os << "schedule = ";
  for (std::size_t i = 0; i < spec.schedule.segments.size(); ++i) {
    const auto& s = spec.schedule.segments[i];
    os << (i ? ", " : "") << fmt_g(s.duration) << " " << (s.non_hermitian ? "NH" : "H");
  }
  os << "\n";
  os << "repeat = " << (spec.schedule.repeat ? "true" : "false") << "\n";
  list("a0",
       [](const cplx& z) {
         return "(" + fmt_g(z.real()) + "," + fmt_g(z.imag()) + ")";
       },
       spec.init.a0);
  os << "t_max = " << fmt_g(spec.t_max) << "\n";
  os << "dt = " << fmt_g(spec.dt) << "\n";
  os << "sample_stride = " << spec.sample_stride << "\n";
  return os.str();
}

std::uint64_t config_hash(const RunSpec& spec) {
  // FNV-1a over the canonical serialization
  const std::string s = serialize_run_spec(spec);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace nhflip
