#include "gm/transport.hpp"

#include <cmath>
#include <numbers>

#include "gm/errors.hpp"
#include "gm/parallel.hpp"

namespace gm {

std::string to_string(TransportTopology t) { return t == TransportTopology::kScf ? "scf" : "clements"; }

TransportTopology transport_topology_from_string(const std::string& name) {
  if (name == "scf") return TransportTopology::kScf;
  if (name == "clements") return TransportTopology::kClements;
  throw Error(ErrorKind::kParse, "unknown transport topology '" + name + "'");
}

std::vector<std::size_t> transport_stage_distances(TransportTopology t, std::size_t n, std::size_t stages) {
  std::vector<std::size_t> out;
  if (t == TransportTopology::kClements) {
    if (n < 2) throw Error(ErrorKind::kInvalidDimension, "transport needs n >= 2");
    out.assign(stages, 1);
    return out;
  }
  const std::vector<std::size_t> full = scf_distances(n, ScfVariant::kFull);
  const std::size_t lead = scf_distances(n, ScfVariant::kMinimal).size();
  // The cycle [n/2, fractal(n/2)] has period n/2 and begins after the minimal sweep.
  const std::size_t period = n / 2;
  for (std::size_t s = 0; s < stages; ++s) {
    if (s < full.size()) {
      out.push_back(full[s]);
    } else if (n == 2) {
      out.push_back(1);
    } else {
      out.push_back(full[lead + (s - lead) % period]);
    }
  }
  return out;
}

double ipr(const std::vector<double>& p) {
  double sum = 0.0, sq = 0.0;
  for (double x : p) {
    if (x < -1e-12 || !std::isfinite(x)) throw Error(ErrorKind::kInvalidDistribution, "negative or non-finite probability");
    sum += x;
    sq += x * x;
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    throw Error(ErrorKind::kInvalidDistribution, "probabilities sum to " + std::to_string(sum) + ", not 1");
  }
  return 1.0 / sq;
}

TransportRecord run_transport(const TransportConfig& cfg) {
  const std::size_t n = cfg.n_modes;
  if (n < 2) throw Error(ErrorKind::kInvalidDimension, "transport needs n >= 2");
  OccupationVector input = cfg.input;
  if (input.empty()) {
    input.assign(n, 0);
    input[n / 2] = 1;
  }
  if (input.size() != n) throw Error(ErrorKind::kInvalidDimension, "input pattern length does not match n_modes");
  const unsigned photons = photon_count(input);
  if (photons == 0) throw Error(ErrorKind::kInvalidPattern, "input carries no photons");
  if (photons > 2) throw Error(ErrorKind::kSizeLimit, "transport supports one or two photons");
  if (cfg.n_circuits == 0) throw Error(ErrorKind::kInvalidInput, "n_circuits must be >= 1");

  const std::vector<std::size_t> distances = transport_stage_distances(cfg.topology, n, cfg.stages);
  std::vector<Layer> layers;
  for (std::size_t s = 0; s < distances.size(); ++s) {
    Layer layer;
    if (cfg.topology == TransportTopology::kClements) {
      for (std::size_t k = s % 2; k + 1 < n; k += 2) layer.push_back({k, k + 1, std::numbers::pi / 2, 0.0});
    } else {
      for (auto [i, j] : scf_layer_pairs(n, distances[s])) layer.push_back({i, j, std::numbers::pi / 2, 0.0});
    }
    layers.push_back(std::move(layer));
  }
  std::size_t couplings = 0;
  for (const Layer& l : layers) couplings += l.size();

  TransportRecord rec;
  rec.stages = cfg.stages;
  rec.n_modes = n;
  rec.single_photon_heatmap.assign(cfg.stages, std::vector<double>(n, 0.0));
  rec.coincidence_heatmap.assign(cfg.stages, std::vector<double>(n, 0.0));
  rec.bunching_per_stage.assign(cfg.stages, 0.0);

  const auto dim = static_cast<Eigen::Index>(n);
  struct CircuitTrace {
    std::vector<std::vector<double>> single, coincidence;
  };
  std::vector<CircuitTrace> traces(cfg.n_circuits);
  parallel_for(cfg.n_circuits, cfg.threads, [&](std::size_t circuit) {
    CircuitTrace& tr = traces[circuit];
    tr.single.assign(cfg.stages, std::vector<double>(n, 0.0));
    tr.coincidence.assign(cfg.stages, std::vector<double>(n, 0.0));
    const std::vector<ErrorPair> errors = draw_errors(cfg.noise, circuit, couplings);
    // Column vector for one photon; symmetric amplitude tensor for two.
    ComplexMatrix state = ComplexMatrix::Zero(dim, photons == 1 ? 1 : dim);
    std::vector<std::size_t> occupied;
    for (std::size_t m = 0; m < n; ++m)
      for (unsigned c = 0; c < input[m]; ++c) occupied.push_back(m);
    const auto a = static_cast<Eigen::Index>(occupied[0]);
    if (photons == 1) {
      state(a, 0) = 1.0;
    } else {
      const auto b = static_cast<Eigen::Index>(occupied[1]);
      if (a == b) {
        state(a, a) = 1.0;
      } else {
        state(a, b) = state(b, a) = 1.0 / std::numbers::sqrt2;
      }
    }

    std::size_t ordinal = 0;
    for (std::size_t s = 0; s < layers.size(); ++s) {
      for (const Coupling& c : layers[s]) {
        const ErrorPair& e = errors[ordinal++];
        const Eigen::Matrix2cd t = noisy_transfer({c.theta, c.phi, e.alpha, e.beta});
        apply_on_rows(state, c.i, c.j, t);
        if (photons == 2) {
          // C -> T C T^T acts on both tensor indices.
          ComplexMatrix tc = state.transpose();
          apply_on_rows(tc, c.i, c.j, t);
          state = tc.transpose();
        }
      }
      for (std::size_t m = 0; m < n; ++m) {
        const auto i = static_cast<Eigen::Index>(m);
        if (photons == 1) {
          tr.single[s][m] = std::norm(state(i, 0));
        } else {
          // <n_i> = 2 sum_j |C_ij|^2, halved to a per-photon probability.
          tr.single[s][m] = state.row(i).squaredNorm();
          tr.coincidence[s][m] = std::norm(state(i, i));
        }
      }
    }
  });

  const double weight = 1.0 / static_cast<double>(cfg.n_circuits);
  for (const CircuitTrace& tr : traces) {
    for (std::size_t s = 0; s < cfg.stages; ++s) {
      for (std::size_t m = 0; m < n; ++m) {
        rec.single_photon_heatmap[s][m] += weight * tr.single[s][m];
        rec.coincidence_heatmap[s][m] += weight * tr.coincidence[s][m];
        rec.bunching_per_stage[s] += weight * tr.coincidence[s][m];
      }
    }
  }
  for (const auto& row : rec.single_photon_heatmap) rec.ipr_per_stage.push_back(ipr(row));
  return rec;
}

}  // namespace gm
