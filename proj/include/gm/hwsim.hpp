#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "gm/hardware.hpp"
#include "gm/noise.hpp"
#include "gm/scheduler.hpp"

namespace gm {

// Slot-by-slot propagation of every input bin through switch1, the delay
// arms, the MZI, switch2 and the outer loop. Returns the output-bin by
// input-bin transfer matrix. Amplitude that switch2 does not select is lost.
//
// Noise: the physical MZI fires once per time slot, idle slots included.
// Correlated noise shares one error pair across the whole schedule (the pair
// apply_noise draws for the same circuit index); uncorrelated noise draws a
// pair per firing.
ComplexMatrix simulate(const Schedule& s, const HardwareConfig& hw, const NoiseModel& noise = {},
                       std::uint64_t circuit = 0);

struct LossBudget {
  double total_db = 0.0;
  // Keys: "mzi", "inner_delay", "outer_loop", "switches".
  std::map<std::string, double> breakdown;
};

// Nominal per-bin loss along the programmed path: one MZI pass, one inner
// delay traversal, one outer loop and two switch passes per round.
LossBudget loss_budget(const Schedule& s, const HardwareConfig& hw);

}  // namespace gm
