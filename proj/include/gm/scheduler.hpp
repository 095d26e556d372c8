#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gm/hardware.hpp"
#include "gm/mesh.hpp"

namespace gm {

// switch1: cross sends a bin into the delayed (top) arm, bar into the direct
// (bottom) arm. switch2 picks, for each outgoing bin, which MZI output feeds
// it: bar takes the top output directly, cross takes the bottom output after
// its delay.
enum class SwitchState { kBar, kCross };

std::string to_string(SwitchState s);
SwitchState switch_state_from_string(const std::string& name);

// MZI program for one time slot. Slot t sees bin t - d on its top input and
// bin t on its bottom input. Idle slots are held at the bar identity
// T(pi, pi) = I.
struct MziSlot {
  bool active = false;
  double theta = 0.0;
  double phi = 0.0;
  // Index of the coupling in its mesh layer, or -1 for an idle slot.
  long coupling = -1;
};

struct Round {
  std::size_t delay = 1;                    // in units of tau
  std::vector<SwitchState> switch1;         // indexed by input bin
  std::vector<MziSlot> mzi;                 // indexed by MZI time slot, n + delay entries
  std::vector<SwitchState> switch2;         // indexed by output bin
  bool drop = false;                        // outgoing bins leave for the detector
};

struct Schedule {
  std::size_t n_modes = 0;
  std::vector<Round> rounds;
  // Round whose switch2 drops the bins (last round; 0 for an empty schedule).
  std::size_t drop_round = 0;
  // Phase screen applied at the drop port.
  std::vector<double> output_phases;
};

// One round per mesh layer. Every coupling of a layer must share one distance
// d that the hardware can delay by.
Schedule compile_schedule(const MeshProgram& m, const HardwareConfig& hw);

struct ScheduleStats {
  double total_time = 0.0;  // seconds
  std::size_t mzi_passes = 0;
  std::size_t outer_loop_passes = 0;
};

// total_time = sum over rounds of (n + d) tau: n bins plus the delay residue.
ScheduleStats schedule_stats(const Schedule& s, const HardwareConfig& hw);

// Structural checks: slot vector lengths, delays present in the hardware,
// switch settings consistent with the MZI program. Throws kSimulation.
void validate(const Schedule& s, const HardwareConfig& hw);

}  // namespace gm
