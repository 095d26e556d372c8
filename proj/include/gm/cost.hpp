#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "gm/hardware.hpp"

namespace gm {

enum class Architecture { kGgmClements, kGgmScf, kClementsSpatial, kMotesLoops, kBouchardCascade };

std::string to_string(Architecture a);
Architecture architecture_from_string(const std::string& name);

struct CostReport {
  Architecture architecture = Architecture::kGgmClements;
  std::size_t n_modes = 0;
  std::size_t hardware_count = 0;
  std::size_t delay_lines = 0;
  double throughput_density = 0.0;  // MACs per pass per hardware unit
  double compile_time = 0.0;        // seconds
  double loss_db = 0.0;
  // Loss split into "mzi", "inner_delay" and "outer_loop" terms.
  std::map<std::string, double> loss_terms;
};

struct CostOptions {
  // Propagation time through one column of a spatial mesh.
  double mzi_flight_time = 10e-12;
};

// Leading constants:
//  SCF uses ceil(log2 N) delay lines;
//  time-bin machines run N rounds, each with one MZI pass, an inner delay of
//  c tau (c tau log2 N for SCF) and an outer loop of c tau N;
//  a cascade pays one MZI and one c tau delay per mode;
//  a spatial mesh pays N MZI passes and no delay lines.
CostReport architecture_cost(Architecture arch, std::size_t n, const HardwareConfig& hw, const CostOptions& opt = {});

struct MacRateQuery {
  std::size_t n_modes = 1;
  double tau = 100e-12;
  std::size_t multiplex = 1;
};

// M^2 N^2 MACs delivered in one N^2 tau compile window, i.e. M^2 / tau.
double mac_rate(const MacRateQuery& q);

// N rounds through an outer loop of length c tau N.
double outer_loop_loss_db(std::size_t n, double tau, double eta_o_db_per_m, double light_speed = 2e8);

}  // namespace gm
