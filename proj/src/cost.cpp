#include "gm/cost.hpp"

#include <bit>
#include <cmath>

#include "gm/errors.hpp"

namespace gm {

std::string to_string(Architecture a) {
  switch (a) {
    case Architecture::kGgmClements: return "ggm_clements";
    case Architecture::kGgmScf: return "ggm_scf";
    case Architecture::kClementsSpatial: return "clements_spatial";
    case Architecture::kMotesLoops: return "motes_loops";
    case Architecture::kBouchardCascade: return "bouchard_cascade";
  }
  return "unknown";
}

Architecture architecture_from_string(const std::string& name) {
  for (Architecture a : {Architecture::kGgmClements, Architecture::kGgmScf, Architecture::kClementsSpatial,
                         Architecture::kMotesLoops, Architecture::kBouchardCascade}) {
    if (to_string(a) == name) return a;
  }
  throw Error(ErrorKind::kInvalidArch, "unknown architecture '" + name + "'");
}

double outer_loop_loss_db(std::size_t n, double tau, double eta_o, double light_speed) {
  const double nd = static_cast<double>(n);
  return nd * light_speed * tau * eta_o * nd;
}

CostReport architecture_cost(Architecture arch, std::size_t n, const HardwareConfig& hw, const CostOptions& opt) {
  if (n < 2) throw Error(ErrorKind::kInvalidDimension, "cost model needs n >= 2");
  validate(hw);
  const double nd = static_cast<double>(n);
  const double ctau = hw.light_speed * hw.tau;
  CostReport r;
  r.architecture = arch;
  r.n_modes = n;
  double inner_m_per_round = 0.0;
  bool outer = false;
  switch (arch) {
    case Architecture::kGgmClements:
    case Architecture::kMotesLoops:
      r.delay_lines = 1;
      r.hardware_count = 4;  // two switches, one MZI, one delay
      r.throughput_density = arch == Architecture::kGgmClements ? nd : nd / 2.0;
      r.compile_time = nd * nd * hw.tau;
      inner_m_per_round = ctau;
      outer = true;
      break;
    case Architecture::kGgmScf: {
      // Mode counts between powers of two are padded up to the next one.
      const auto log2n = static_cast<std::size_t>(std::bit_width(n - 1));
      r.delay_lines = log2n;
      r.hardware_count = 3 + log2n;
      r.throughput_density = nd / static_cast<double>(log2n);
      r.compile_time = nd * nd * hw.tau;
      inner_m_per_round = ctau * static_cast<double>(log2n);
      outer = true;
      break;
    }
    case Architecture::kClementsSpatial:
      r.hardware_count = n * (n - 1) / 2;
      r.throughput_density = 1.0;
      r.compile_time = nd * opt.mzi_flight_time;
      break;
    case Architecture::kBouchardCascade:
      r.delay_lines = n;
      r.hardware_count = n;
      r.throughput_density = nd;
      r.compile_time = nd * hw.tau;
      inner_m_per_round = ctau;
      break;
  }
  r.loss_terms["mzi"] = nd * hw.eta_bs;
  r.loss_terms["inner_delay"] = nd * inner_m_per_round * hw.eta_i;
  r.loss_terms["outer_loop"] = outer ? outer_loop_loss_db(n, hw.tau, hw.eta_o, hw.light_speed) : 0.0;
  for (const auto& [name, db] : r.loss_terms) r.loss_db += db;
  return r;
}

double mac_rate(const MacRateQuery& q) {
  if (!(q.tau > 0.0) || q.multiplex < 1 || q.n_modes < 1) {
    throw Error(ErrorKind::kInvalidInput, "mac_rate needs tau > 0, multiplex >= 1 and n_modes >= 1");
  }
  // M^2 N^2 MACs over an N^2 tau window; N^2 cancels.
  const double m = static_cast<double>(q.multiplex);
  return m * m / q.tau;
}

}  // namespace gm
