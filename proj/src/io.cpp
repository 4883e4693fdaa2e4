#include "nhflip/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace nhflip {

namespace {
std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace

std::string trajectory_csv(const Trajectory& traj, bool include_amplitudes) {
  std::ostringstream os;
  os << "t";
  for (int i = 0; i < traj.n_states; ++i) os << ",P_" << (i + 1);
  if (traj.has_continuum) os << ",P_c";
  os << ",P_tot";
  if (include_amplitudes)
    for (int i = 0; i < traj.n_states; ++i)
      os << ",Re_c_" << (i + 1) << ",Im_c_" << (i + 1);
  os << "\n";
  for (const auto& s : traj.samples) {
    os << g17(s.t);
    for (int i = 0; i < traj.n_states; ++i) os << "," << g17(std::norm(s.a[i]));
    if (traj.has_continuum) os << "," << g17(s.p_c);
    os << "," << g17(s.p_tot);
    if (include_amplitudes)
      for (int i = 0; i < traj.n_states; ++i) {
        const cplx c = s.a[i] * std::exp(-IU * traj.omega[i] * s.t);
        os << "," << g17(c.real()) << "," << g17(c.imag());
      }
    os << "\n";
  }
  return os.str();
}

std::string fidelity_csv(const ObservableSeries& series) {
  std::ostringstream os;
  os << "t,F\n";
  for (std::size_t i = 0; i < series.t.size(); ++i)
    os << g17(series.t[i]) << "," << g17(series.fidelity[i]) << "\n";
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailure("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoFailure("short write to '" + path + "'");
}

std::string svg_line_plot(const std::string& title,
                          const std::vector<PlotSeries>& series) {
  const double W = 900, H = 540;
  const double ml = 70, mr = 160, mt = 50, mb = 50;
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool first = true;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x->size(); ++i) {
      const double x = (*s.x)[i], y = (*s.y)[i];
      if (first) {
        xmin = xmax = x;
        ymin = ymax = y;
        first = false;
      }
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;

  auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
  auto py = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << W << " "
     << H << "\">\n";
  os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"28\" font-size=\"18\" text-anchor=\"middle\">"
     << title << "</text>\n";
  // axes box and ticks
  os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << (W - ml - mr)
     << "\" height=\"" << (H - mt - mb)
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 5; ++k) {
    const double xv = xmin + k * (xmax - xmin) / 5;
    const double yv = ymin + k * (ymax - ymin) / 5;
    char bx[32], by[32];
    std::snprintf(bx, sizeof bx, "%.4g", xv);
    std::snprintf(by, sizeof by, "%.4g", yv);
    os << "<line x1=\"" << px(xv) << "\" y1=\"" << H - mb << "\" x2=\"" << px(xv)
       << "\" y2=\"" << H - mb + 5 << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << px(xv) << "\" y=\"" << H - mb + 20
       << "\" font-size=\"12\" text-anchor=\"middle\">" << bx << "</text>\n";
    os << "<line x1=\"" << ml - 5 << "\" y1=\"" << py(yv) << "\" x2=\"" << ml
       << "\" y2=\"" << py(yv) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << ml - 8 << "\" y=\"" << py(yv) + 4
       << "\" font-size=\"12\" text-anchor=\"end\">" << by << "</text>\n";
  }
  int li = 0;
  for (const auto& s : series) {
    os << "<polyline fill=\"none\" stroke=\"" << s.color
       << "\" stroke-width=\"1.5\" points=\"";
    // thin dense samples so files stay small
    const std::size_t n = s.x->size();
    const std::size_t stride = std::max<std::size_t>(1, n / 2000);
    for (std::size_t i = 0; i < n; i += stride) {
      char pt[48];
      std::snprintf(pt, sizeof pt, "%.2f,%.2f ", px((*s.x)[i]), py((*s.y)[i]));
      os << pt;
    }
    if ((n - 1) % stride != 0) {
      char pt[48];
      std::snprintf(pt, sizeof pt, "%.2f,%.2f", px((*s.x)[n - 1]),
                    py((*s.y)[n - 1]));
      os << pt;
    }
    os << "\"/>\n";
    os << "<text x=\"" << W - mr + 12 << "\" y=\"" << mt + 18 + 18 * li
       << "\" font-size=\"13\" fill=\"" << s.color << "\">" << s.label
       << "</text>\n";
    ++li;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace nhflip
