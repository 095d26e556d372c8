#include "gm/hardware.hpp"

#include <cmath>
#include <string>

#include "gm/errors.hpp"

namespace gm {

HardwareConfig clements_hardware(double tau) {
  HardwareConfig hw;
  hw.tau = tau;
  hw.delay_set = {1};
  return hw;
}

HardwareConfig scf_hardware(std::size_t n, double tau) {
  HardwareConfig hw;
  hw.tau = tau;
  hw.delay_set.clear();
  for (std::size_t d = 1; d < n; d *= 2) hw.delay_set.push_back(d);
  return hw;
}

void validate(const HardwareConfig& hw) {
  auto bad = [](const std::string& what) { throw Error(ErrorKind::kConfig, "hardware config: " + what); };
  if (!(hw.tau > 0.0) || !std::isfinite(hw.tau)) bad("tau must be positive");
  if (!(hw.light_speed > 0.0)) bad("light_speed must be positive");
  if (hw.eta_bs < 0.0 || hw.eta_i < 0.0 || hw.eta_o < 0.0 || hw.switch_loss < 0.0) {
    bad("loss rates must be non-negative");
  }
  for (std::size_t d : hw.delay_set) {
    if (d == 0) bad("delay lengths must be positive multiples of tau");
  }
  if (hw.mzi.gamma1 < 0.0 || hw.mzi.gamma1 > 1.0 || hw.mzi.gamma2 < 0.0 || hw.mzi.gamma2 > 1.0) {
    bad("arm transmissions must lie in [0, 1]");
  }
}

}  // namespace gm
