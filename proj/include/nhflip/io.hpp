#pragma once

#include <string>
#include <vector>

#include "nhflip/observables.hpp"
#include "nhflip/trajectory.hpp"

namespace nhflip {

// CSV: header row, then t followed by named observable columns,
// 17 significant digits throughout.
std::string trajectory_csv(const Trajectory& traj,
                           bool include_amplitudes = false);
std::string fidelity_csv(const ObservableSeries& series);

void write_file(const std::string& path, const std::string& content);

// Minimal standalone SVG line plot (polylines, fixed viewBox).
struct PlotSeries {
  std::string label;
  std::string color;
  const std::vector<double>* x;
  const std::vector<double>* y;
};

std::string svg_line_plot(const std::string& title,
                          const std::vector<PlotSeries>& series);

}  // namespace nhflip
