#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "gm/mzi.hpp"

namespace gm {

struct HardwareConfig {
  double tau = 100e-12;                 // bin spacing, seconds
  std::vector<std::size_t> delay_set{1};  // selectable inner delays, in units of tau
  double eta_bs = 0.0;                  // dB per MZI pass
  double eta_i = 0.0;                   // dB per meter of inner delay line
  double eta_o = 0.0;                   // dB per meter of outer loop
  double light_speed = 2e8;             // m/s in fiber
  double switch_loss = 0.0;             // dB per switch pass
  // Static device parameters. alpha and beta add to the sampled errors;
  // gamma1 and gamma2 are the internal arm transmissions.
  MZIParams mzi;
};

// Single delay of length tau.
HardwareConfig clements_hardware(double tau = 100e-12);
// Delays tau, 2 tau, ..., (n/2) tau.
HardwareConfig scf_hardware(std::size_t n, double tau = 100e-12);

// Throws kConfig when a field is out of range.
void validate(const HardwareConfig& hw);

inline double db_to_amplitude(double db) { return std::pow(10.0, -db / 20.0); }

}  // namespace gm
