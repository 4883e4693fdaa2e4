#pragma once

#include <string>
#include <vector>

#include "nhflip/config.hpp"

namespace nhflip {

// Canned experiment instances: three states side-coupled at sites -1, 0, 1
// with hoppings (0.0375, 0.025, 0.05) kappa.
//   fig2  - degenerate states, flip at T = 200
//   fig3a - detunings (0, 0.5, -0.5), flip at T = 200
//   fig3b - detunings (0, 0.05, -0.025), flip at T = 200
//   fig4  - fig3b instance with periodic alternation, half-period T = 8
std::vector<std::string> preset_names();
RunSpec preset(const std::string& name);

}  // namespace nhflip
