#include "gm/bsm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gm/errors.hpp"
#include "gm/parallel.hpp"

namespace gm {
namespace {

constexpr double kBalanced = std::numbers::pi / 2.0;
constexpr double kBar = std::numbers::pi;

bool contains(const std::vector<std::pair<std::size_t, std::size_t>>& pairs, std::size_t i, std::size_t j) {
  return std::find(pairs.begin(), pairs.end(), std::make_pair(i, j)) != pairs.end();
}

void program_stages(MeshProgram& m, const std::vector<std::pair<std::size_t, std::size_t>>& stage_one) {
  for (std::size_t l = 0; l < m.layers.size(); ++l) {
    for (Coupling& c : m.layers[l]) {
      const bool active = (l == 0 && contains(stage_one, c.i, c.j)) || l == 1 || l == 2;
      c.theta = active ? kBalanced : kBar;
      c.phi = 0.0;
    }
  }
}

}  // namespace

std::string to_string(BellState b) {
  switch (b) {
    case BellState::kPsiPlus: return "psi+";
    case BellState::kPsiMinus: return "psi-";
    case BellState::kPhiPlus: return "phi+";
    case BellState::kPhiMinus: return "phi-";
  }
  return "psi+";
}

std::string to_string(BsmArchitecture a) { return a == BsmArchitecture::kGreenMachine ? "ggm" : "clements"; }

BsmArchitecture bsm_architecture_from_string(const std::string& name) {
  if (name == "ggm") return BsmArchitecture::kGreenMachine;
  if (name == "clements") return BsmArchitecture::kClements;
  throw Error(ErrorKind::kParse, "unknown BSM architecture '" + name + "'");
}

BsmCircuit build_bsm_circuit(std::size_t depth) {
  if (depth < 3 || depth > 7) {
    throw Error(ErrorKind::kInvalidDepth, "BSM depth must be in [3, 7], got " + std::to_string(depth));
  }
  BsmCircuit c;
  c.ancilla_modes = {2, 3, 6, 7};
  c.program = prune_to_depth(depth);
  program_stages(c.program, {{0, 4}, {1, 5}});
  return c;
}

BsmCircuit build_standard_bsm_circuit() {
  BsmCircuit c;
  c.program = prune_to_depth(3);
  c.program.layers.resize(1);
  c.program.topology = Topology::kCustom;
  c.program.pruned_depth = 0;
  for (Coupling& x : c.program.layers[0]) {
    const bool qubit = (x.i == 0 && x.j == 4) || (x.i == 1 && x.j == 5);
    x.theta = qubit ? kBalanced : kBar;
    x.phi = 0.0;
  }
  return c;
}

std::vector<std::pair<Complex, OccupationVector>> bell_input(const BsmCircuit& c, BellState b) {
  auto pattern = [&](int q1, int q2) {
    OccupationVector occ(c.n_modes, 0);
    occ[q1 == 0 ? c.qubit1_rails.first : c.qubit1_rails.second] += 1;
    occ[q2 == 0 ? c.qubit2_rails.first : c.qubit2_rails.second] += 1;
    for (std::size_t a : c.ancilla_modes) occ[a] += 1;
    return occ;
  };
  const double r = 1.0 / std::numbers::sqrt2;
  switch (b) {
    case BellState::kPsiPlus: return {{r, pattern(0, 1)}, {r, pattern(1, 0)}};
    case BellState::kPsiMinus: return {{r, pattern(0, 1)}, {-r, pattern(1, 0)}};
    case BellState::kPhiPlus: return {{r, pattern(0, 0)}, {r, pattern(1, 1)}};
    case BellState::kPhiMinus: return {{r, pattern(0, 0)}, {-r, pattern(1, 1)}};
  }
  return {};
}

PatternDistribution detection_distribution(const BsmCircuit& c, BellState b, const ComplexMatrix& u) {
  if (u.rows() != static_cast<Eigen::Index>(c.n_modes) || u.cols() != u.rows()) {
    throw Error(ErrorKind::kInvalidDimension, "detection_distribution: U must be n_modes x n_modes");
  }
  const FockDistribution d = evolve(u, bell_input(c, b));
  PatternDistribution out;
  out.basis = std::make_shared<const FockBasis>(d.basis());
  out.probability.resize(d.size());
  for (std::size_t s = 0; s < d.size(); ++s) out.probability[s] = std::norm(d.amplitudes()(static_cast<Eigen::Index>(s)));
  return out;
}

// The four Bell inputs share their four Fock components, so each component is
// evolved once and recombined.
BellDistributions detection_distributions(const BsmCircuit& c, const ComplexMatrix& u) {
  if (u.rows() != static_cast<Eigen::Index>(c.n_modes) || u.cols() != u.rows()) {
    throw Error(ErrorKind::kInvalidDimension, "detection_distributions: U must be n_modes x n_modes");
  }
  const auto psi = bell_input(c, BellState::kPsiPlus);
  const auto phi = bell_input(c, BellState::kPhiPlus);
  const FockDistribution p01 = evolve(u, psi[0].second);
  const FockDistribution p10 = evolve(u, psi[1].second);
  const FockDistribution p00 = evolve(u, phi[0].second);
  const FockDistribution p11 = evolve(u, phi[1].second);
  const double r = 1.0 / std::numbers::sqrt2;
  const std::array<ComplexVector, 4> amps{r * (p01.amplitudes() + p10.amplitudes()),
                                          r * (p01.amplitudes() - p10.amplitudes()),
                                          r * (p00.amplitudes() + p11.amplitudes()),
                                          r * (p00.amplitudes() - p11.amplitudes())};
  const auto basis = std::make_shared<const FockBasis>(p01.basis());
  BellDistributions out;
  for (std::size_t k = 0; k < 4; ++k) {
    out[k].basis = basis;
    out[k].probability.resize(basis->size());
    for (std::size_t s = 0; s < basis->size(); ++s) out[k].probability[s] = std::norm(amps[k](static_cast<Eigen::Index>(s)));
  }
  return out;
}

DecodeResult bayesian_decode(const BellDistributions& dists, double threshold) {
  if (!(threshold > 0.25) || threshold > 1.0) {
    throw Error(ErrorKind::kInvalidInput, "decision threshold must lie in (0.25, 1]");
  }
  const std::size_t size = dists[0].probability.size();
  for (const auto& d : dists) {
    if (d.probability.size() != size) throw Error(ErrorKind::kInvalidDimension, "Bell distributions differ in size");
  }
  DecodeResult r;
  r.decision.assign(size, -1);
  r.posterior.assign(size, {0.0, 0.0, 0.0, 0.0});
  double total = 0.0;
  double decoded = 0.0;
  double wrong = 0.0;
  for (std::size_t s = 0; s < size; ++s) {
    double evidence = 0.0;
    for (const auto& d : dists) evidence += d.probability[s];
    total += evidence;
    if (evidence <= 0.0) continue;
    int best = 0;
    for (int k = 0; k < 4; ++k) {
      r.posterior[s][k] = dists[k].probability[s] / evidence;
      if (r.posterior[s][k] > r.posterior[s][best]) best = k;
    }
    if (r.posterior[s][best] >= threshold) {
      r.decision[s] = best;
      decoded += 0.25 * evidence;
      wrong += 0.25 * (evidence - dists[best].probability[s]);
    }
  }
  if (!(total > 0.0)) throw Error(ErrorKind::kDegenerateInput, "all detection distributions are zero");
  r.success_rate = decoded;
  r.error_given_heralded = decoded > 0.0 ? wrong / decoded : std::numeric_limits<double>::quiet_NaN();
  return r;
}

Quantiles summarize(const std::vector<double>& values) {
  Quantiles q;
  if (values.empty()) return q;
  q.min = *std::min_element(values.begin(), values.end());
  q.max = *std::max_element(values.begin(), values.end());
  q.q25 = quantile(values, 0.25);
  q.median = quantile(values, 0.5);
  q.q75 = quantile(values, 0.75);
  double sum = 0.0;
  for (double v : values) sum += v;
  q.mean = sum / static_cast<double>(values.size());
  return q;
}

MeshProgram clements_bsm_program() {
  return clements_decompose(mesh_to_unitary(build_bsm_circuit(3).program));
}

BsmResult benchmark(const BsmBenchmarkConfig& cfg) {
  if (cfg.n_samples == 0) throw Error(ErrorKind::kInvalidInput, "benchmark needs at least one sample");
  const BsmCircuit circuit = build_bsm_circuit(cfg.depth);
  const MeshProgram program =
      cfg.architecture == BsmArchitecture::kClements ? clements_bsm_program() : circuit.program;
  const NoiseModel noise{cfg.architecture == BsmArchitecture::kClements ? NoiseKind::kUncorrelated
                                                                        : NoiseKind::kCorrelated,
                         cfg.sigma, 0.0, cfg.seed};
  BsmResult result;
  result.samples.resize(cfg.n_samples);
  parallel_for(cfg.n_samples, cfg.threads, [&](std::size_t s) {
    const ComplexMatrix u = apply_noise(program, noise, s);
    const DecodeResult d = bayesian_decode(detection_distributions(circuit, u), cfg.threshold);
    result.samples[s] = {s, d.success_rate, d.error_given_heralded};
  });
  std::vector<double> successes, errors;
  for (const BsmSample& b : result.samples) {
    successes.push_back(b.success);
    if (!std::isnan(b.error)) errors.push_back(b.error);
  }
  result.success = summarize(successes);
  result.error = summarize(errors);
  result.success_rate = result.success.mean;
  result.error_given_heralded = errors.empty() ? std::numeric_limits<double>::quiet_NaN() : result.error.mean;
  return result;
}

std::vector<std::pair<double, double>> threshold_sweep(const BsmCircuit& c, const ComplexMatrix& u,
                                                       const std::vector<double>& thresholds) {
  const BellDistributions dists = detection_distributions(c, u);
  std::vector<std::pair<double, double>> out;
  for (double t : thresholds) {
    const DecodeResult d = bayesian_decode(dists, t);
    out.emplace_back(d.success_rate, d.error_given_heralded);
  }
  return out;
}

double loss_threshold(double target) {
  if (!(target > 0.0)) throw Error(ErrorKind::kInvalidInput, "target success must be positive");
  if (target > kBoostedSuccess) {
    throw Error(ErrorKind::kInfeasible, "target success above 0.75 cannot be reached by the boosted measurement");
  }
  return std::pow(target / kBoostedSuccess, 1.0 / 6.0);
}

}  // namespace gm
