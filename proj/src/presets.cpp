#include "nhflip/presets.hpp"

#include <cmath>

namespace nhflip {

namespace {

RunSpec three_state_base() {
  RunSpec spec;
  spec.sys.n_states = 3;
  spec.sys.omega = {0.0, 0.0, 0.0};
  spec.sys.kappa_n = {0.0375, 0.025, 0.05};
  spec.sys.alpha_n = {-1, 0, 1};
  spec.sys.kappa = 1.0;
  const double r3 = 1.0 / std::sqrt(3.0);
  spec.init.a0 = {cplx(r3, 0.0), cplx(0.0, -r3), cplx(-r3, 0.0)};
  spec.t_max = 400.0;
  spec.dt = 0.01;
  spec.sample_stride = 10;
  return spec;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig2", "fig3a", "fig3b", "fig4"};
}

RunSpec preset(const std::string& name) {
  RunSpec spec = three_state_base();
  if (name == "fig2") {
    spec.schedule = CouplingSchedule::flip_at(200.0);
  } else if (name == "fig3a") {
    spec.sys.omega = {0.0, 0.5, -0.5};
    spec.schedule = CouplingSchedule::flip_at(200.0);
  } else if (name == "fig3b") {
    spec.sys.omega = {0.0, 0.05, -0.025};
    spec.schedule = CouplingSchedule::flip_at(200.0);
  } else if (name == "fig4") {
    spec.sys.omega = {0.0, 0.05, -0.025};
    spec.schedule = CouplingSchedule::alternating(8.0);
  } else {
    throw UnknownPreset("no preset named '" + name + "'");
  }
  return spec;
}

}  // namespace nhflip
