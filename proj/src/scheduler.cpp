#include "gm/scheduler.hpp"

#include <algorithm>
#include <numbers>
#include <string>

#include "gm/errors.hpp"

namespace gm {

std::string to_string(SwitchState s) { return s == SwitchState::kBar ? "bar" : "cross"; }

SwitchState switch_state_from_string(const std::string& name) {
  if (name == "bar") return SwitchState::kBar;
  if (name == "cross") return SwitchState::kCross;
  throw Error(ErrorKind::kParse, "unknown switch state '" + name + "'");
}

Schedule compile_schedule(const MeshProgram& m, const HardwareConfig& hw) {
  validate(m);
  validate(hw);
  const std::size_t n = m.n_modes;
  Schedule s;
  s.n_modes = n;
  s.output_phases = m.output_phases;

  for (std::size_t l = 0; l < m.layers.size(); ++l) {
    const Layer& layer = m.layers[l];
    std::size_t d = hw.delay_set.empty() ? 1 : hw.delay_set.front();
    if (!layer.empty()) {
      d = layer.front().j - layer.front().i;
      for (const Coupling& c : layer) {
        if (c.j - c.i != d) {
          throw Error(ErrorKind::kCompile, "layer " + std::to_string(l) + " mixes coupling distances " +
                                               std::to_string(d) + " and " + std::to_string(c.j - c.i));
        }
      }
      if (std::find(hw.delay_set.begin(), hw.delay_set.end(), d) == hw.delay_set.end()) {
        throw Error(ErrorKind::kCompile, "layer " + std::to_string(l) + " needs a delay of " +
                                             std::to_string(d) + " tau, which the hardware does not provide");
      }
    } else if (hw.delay_set.empty()) {
      throw Error(ErrorKind::kCompile, "hardware has no delay lines");
    }

    Round r;
    r.delay = d;
    r.switch1.assign(n, SwitchState::kBar);
    r.switch2.assign(n, SwitchState::kCross);
    r.mzi.assign(n + d, MziSlot{false, std::numbers::pi, std::numbers::pi, -1});
    for (std::size_t k = 0; k < layer.size(); ++k) {
      const Coupling& c = layer[k];
      r.switch1[c.i] = SwitchState::kCross;
      r.switch2[c.i] = SwitchState::kBar;
      r.mzi[c.j] = MziSlot{true, c.theta, c.phi, static_cast<long>(k)};
    }
    s.rounds.push_back(std::move(r));
  }
  if (!s.rounds.empty()) {
    s.rounds.back().drop = true;
    s.drop_round = s.rounds.size() - 1;
  }
  return s;
}

ScheduleStats schedule_stats(const Schedule& s, const HardwareConfig& hw) {
  ScheduleStats st;
  for (const Round& r : s.rounds) {
    st.total_time += static_cast<double>(s.n_modes + r.delay) * hw.tau;
  }
  st.mzi_passes = s.n_modes * s.rounds.size();
  st.outer_loop_passes = s.rounds.size();
  return st;
}

void validate(const Schedule& s, const HardwareConfig& hw) {
  auto fail = [](std::size_t r, const std::string& what) {
    throw Error(ErrorKind::kSimulation, "round " + std::to_string(r) + ": " + what);
  };
  if (s.output_phases.size() != s.n_modes) {
    throw Error(ErrorKind::kSimulation, "schedule output_phases length does not match n_modes");
  }
  for (std::size_t k = 0; k < s.rounds.size(); ++k) {
    const Round& r = s.rounds[k];
    if (std::find(hw.delay_set.begin(), hw.delay_set.end(), r.delay) == hw.delay_set.end()) {
      fail(k, "delay " + std::to_string(r.delay) + " tau is not available on this hardware");
    }
    if (r.switch1.size() != s.n_modes || r.switch2.size() != s.n_modes) fail(k, "switch program length");
    if (r.mzi.size() != s.n_modes + r.delay) fail(k, "MZI program length");
    if (r.drop != (k + 1 == s.rounds.size())) fail(k, "only the last round may drop");
    for (std::size_t t = 0; t < r.mzi.size(); ++t) {
      const bool top = t >= r.delay && t - r.delay < s.n_modes &&
                       r.switch1[t - r.delay] == SwitchState::kCross;
      const bool bottom = t < s.n_modes && r.switch1[t] == SwitchState::kBar;
      // Two bins meet at slot t only when the top one was delayed and the
      // bottom one was not; a delayed bin with no partner is a timing fault.
      if (top && !bottom) fail(k, "bin " + std::to_string(t - r.delay) + " reaches the MZI without a partner");
      if (r.mzi[t].active && !(top && bottom)) fail(k, "MZI slot " + std::to_string(t) + " fires on an empty input");
    }
  }
}

}  // namespace gm
