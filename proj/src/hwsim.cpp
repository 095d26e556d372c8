#include "gm/hwsim.hpp"

#include <string>

#include "gm/errors.hpp"

namespace gm {

ComplexMatrix simulate(const Schedule& s, const HardwareConfig& hw, const NoiseModel& noise, std::uint64_t circuit) {
  validate(hw);
  validate(s, hw);
  const std::size_t n = s.n_modes;
  const auto rows = static_cast<Eigen::Index>(n);

  std::size_t firings = 0;
  for (const Round& r : s.rounds) firings += r.mzi.size();
  const std::vector<ErrorPair> errors = draw_errors(noise, circuit, firings);

  const Complex switch_amp = db_to_amplitude(hw.switch_loss);
  const double bs_amp = db_to_amplitude(hw.eta_bs);
  const double outer_amp = db_to_amplitude(hw.eta_o * static_cast<double>(n) * hw.tau * hw.light_speed);

  using RowMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  RowMatrix state = ComplexMatrix::Identity(rows, rows);
  std::size_t firing = 0;

  for (const Round& r : s.rounds) {
    const std::size_t d = r.delay;
    const std::size_t slots = n + d;
    const double inner_amp = db_to_amplitude(hw.eta_i * static_cast<double>(d) * hw.tau * hw.light_speed);
    RowMatrix top_in = RowMatrix::Zero(static_cast<Eigen::Index>(slots), rows);
    RowMatrix bottom_in = RowMatrix::Zero(static_cast<Eigen::Index>(slots), rows);

    for (std::size_t k = 0; k < n; ++k) {
      const auto row = static_cast<Eigen::Index>(k);
      if (r.switch1[k] == SwitchState::kCross) {
        top_in.row(static_cast<Eigen::Index>(k + d)) += (switch_amp * inner_amp) * state.row(row);
      } else {
        bottom_in.row(row) += switch_amp * state.row(row);
      }
    }

    RowMatrix top_out(static_cast<Eigen::Index>(slots), rows);
    RowMatrix bottom_out(static_cast<Eigen::Index>(slots), rows);
    for (std::size_t t = 0; t < slots; ++t) {
      const MziSlot& slot = r.mzi[t];
      const ErrorPair& e = errors[firing++];
      MZIParams p = hw.mzi;
      p.theta = slot.theta;
      p.phi = slot.phi;
      p.alpha += e.alpha;
      p.beta += e.beta;
      const Eigen::Matrix2cd m = bs_amp * lossy_transfer(p);
      const auto ti = static_cast<Eigen::Index>(t);
      top_out.row(ti) = m(0, 0) * top_in.row(ti) + m(0, 1) * bottom_in.row(ti);
      bottom_out.row(ti) = m(1, 0) * top_in.row(ti) + m(1, 1) * bottom_in.row(ti);
    }

    // Output bin k leaves at time k + d, either straight from the top output
    // at that slot or from the bottom output of slot k after its delay.
    RowMatrix next(rows, rows);
    const Complex exit_amp = switch_amp * outer_amp;
    for (std::size_t k = 0; k < n; ++k) {
      const auto row = static_cast<Eigen::Index>(k);
      if (r.switch2[k] == SwitchState::kBar) {
        next.row(row) = exit_amp * top_out.row(static_cast<Eigen::Index>(k + d));
      } else {
        next.row(row) = (exit_amp * inner_amp) * bottom_out.row(row);
      }
    }
    state = std::move(next);
  }

  for (Eigen::Index k = 0; k < rows; ++k) {
    state.row(k) *= std::polar(1.0, s.output_phases[static_cast<std::size_t>(k)]);
  }
  return state;
}

LossBudget loss_budget(const Schedule& s, const HardwareConfig& hw) {
  validate(hw);
  LossBudget b;
  const double rounds = static_cast<double>(s.rounds.size());
  double inner_m = 0.0;
  for (const Round& r : s.rounds) inner_m += static_cast<double>(r.delay) * hw.tau * hw.light_speed;
  const double outer_m = rounds * static_cast<double>(s.n_modes) * hw.tau * hw.light_speed;
  b.breakdown["mzi"] = rounds * hw.eta_bs;
  b.breakdown["inner_delay"] = inner_m * hw.eta_i;
  b.breakdown["outer_loop"] = outer_m * hw.eta_o;
  b.breakdown["switches"] = 2.0 * rounds * hw.switch_loss;
  for (const auto& [name, db] : b.breakdown) b.total_db += db;
  return b;
}

}  // namespace gm
