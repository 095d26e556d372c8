#include "gm/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gm/errors.hpp"
#include "gm/parallel.hpp"
#include "gm/random.hpp"

namespace gm {
namespace {

enum StreamTag : std::uint64_t { kShared = 1, kPerCoupling = 2, kJitter = 3, kTarget = 11, kState = 12 };

}  // namespace

std::string to_string(NoiseKind k) {
  switch (k) {
    case NoiseKind::kCorrelated: return "correlated";
    case NoiseKind::kUncorrelated: return "uncorrelated";
    case NoiseKind::kHybrid: return "hybrid";
  }
  return "correlated";
}

NoiseKind noise_kind_from_string(const std::string& name) {
  if (name == "correlated") return NoiseKind::kCorrelated;
  if (name == "uncorrelated") return NoiseKind::kUncorrelated;
  if (name == "hybrid") return NoiseKind::kHybrid;
  throw Error(ErrorKind::kParse, "unknown noise kind '" + name + "'");
}

std::vector<ErrorPair> draw_errors(const NoiseModel& model, std::uint64_t circuit, std::size_t count) {
  if (!(model.sigma >= 0.0) || !(model.sigma_jitter >= 0.0)) {
    throw Error(ErrorKind::kInvalidInput, "noise sigma must be non-negative");
  }
  std::vector<ErrorPair> out(count);
  if (model.kind == NoiseKind::kUncorrelated) {
    Rng rng = make_rng(model.seed, {circuit, kPerCoupling});
    for (ErrorPair& e : out) {
      e.alpha = normal(rng, model.sigma);
      e.beta = normal(rng, model.sigma);
    }
    return out;
  }
  Rng shared = make_rng(model.seed, {circuit, kShared});
  const ErrorPair base{normal(shared, model.sigma), normal(shared, model.sigma)};
  std::fill(out.begin(), out.end(), base);
  if (model.kind == NoiseKind::kHybrid && model.sigma_jitter > 0.0) {
    Rng jitter = make_rng(model.seed, {circuit, kJitter});
    for (ErrorPair& e : out) {
      e.alpha += normal(jitter, model.sigma_jitter);
      e.beta += normal(jitter, model.sigma_jitter);
    }
  }
  return out;
}

ComplexMatrix apply_noise(const MeshProgram& m, const NoiseModel& model, std::uint64_t circuit) {
  const std::vector<ErrorPair> errors = draw_errors(model, circuit, m.coupling_count());
  return mesh_to_unitary(m, [&](const Coupling& c, std::size_t, std::size_t ordinal) {
    const ErrorPair& e = errors[ordinal];
    return noisy_transfer({c.theta, c.phi, e.alpha, e.beta});
  });
}

double predict_infidelity(NoiseKind kind, std::size_t n, double sigma, std::size_t n_photons) {
  const double base = static_cast<double>(n_photons) * static_cast<double>(n) * sigma * sigma / 2.0;
  return kind == NoiseKind::kCorrelated ? base / std::numbers::sqrt2 : base;
}

ComplexMatrix random_two_photon_state(std::size_t n, Rng& rng) {
  if (n == 0) throw Error(ErrorKind::kInvalidDimension, "two-photon state needs n >= 1");
  const auto dim = static_cast<Eigen::Index>(n);
  ComplexMatrix g(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c)
    for (Eigen::Index r = 0; r < dim; ++r) {
      const double re = standard_normal(rng);
      const double im = standard_normal(rng);
      g(r, c) = Complex(re, im);
    }
  ComplexMatrix s = g + g.transpose();
  s /= s.norm();
  return s;
}

double two_photon_state_infidelity(const ComplexMatrix& u_ideal, const ComplexMatrix& u_actual,
                                   const ComplexMatrix& state) {
  if (u_ideal.rows() != u_actual.rows() || u_ideal.cols() != u_actual.cols() ||
      state.rows() != u_ideal.cols() || state.cols() != u_ideal.cols()) {
    throw Error(ErrorKind::kInvalidDimension, "two_photon_state_infidelity: dimension mismatch");
  }
  const ComplexMatrix v = u_ideal.adjoint() * u_actual;
  const ComplexMatrix evolved = v * state * v.transpose();
  const Complex overlap = (state.conjugate().cwiseProduct(evolved)).sum();
  return 1.0 - std::norm(overlap);
}

double fock_state_infidelity(const ComplexMatrix& u_ideal, const ComplexMatrix& u_actual,
                             const OccupationVector& input) {
  if (u_ideal.rows() != u_actual.rows() || u_ideal.cols() != u_actual.cols()) {
    throw Error(ErrorKind::kInvalidDimension, "fock_state_infidelity: dimension mismatch");
  }
  return 1.0 - std::norm(output_amplitude(u_ideal.adjoint() * u_actual, input, input));
}

std::vector<ScalingSample> scaling_samples(const ScalingConfig& cfg) {
  if (cfg.n < 2) throw Error(ErrorKind::kInvalidDimension, "scaling study needs n >= 2");
  if (cfg.n_photons < 1 || cfg.n_photons > 2) {
    throw Error(ErrorKind::kSizeLimit, "scaling study supports 1 or 2 photons");
  }
  const std::size_t per_sample = cfg.sigmas.size() * cfg.kinds.size();
  std::vector<ScalingSample> rows(cfg.samples * per_sample);
  parallel_for(cfg.samples, cfg.threads, [&](std::size_t s) {
    Rng target_rng = make_rng(cfg.seed, {kTarget, s});
    const MeshProgram mesh = clements_decompose(haar_random_unitary(cfg.n, target_rng));
    const ComplexMatrix ideal = mesh_to_unitary(mesh);
    Rng state_rng = make_rng(cfg.seed, {kState, s});
    const StateVector psi = random_state(cfg.n, state_rng);
    ComplexMatrix pair_state;
    OccupationVector one(cfg.n, 0), two(cfg.n, 0);
    if (cfg.n_photons == 2) {
      pair_state = random_two_photon_state(cfg.n, state_rng);
      const std::size_t k = state_rng() % cfg.n;
      std::size_t l = state_rng() % (cfg.n - 1);
      if (l >= k) ++l;
      one[k] = 1;
      two[k] = two[l] = 1;
    }

    for (std::size_t k = 0; k < cfg.kinds.size(); ++k) {
      for (std::size_t q = 0; q < cfg.sigmas.size(); ++q) {
        // The same noise seed for every sigma: draws scale with sigma.
        const NoiseModel model{cfg.kinds[k], cfg.sigmas[q], 0.0, derive_seed(cfg.seed, {k})};
        const ComplexMatrix noisy = apply_noise(mesh, model, s);
        ScalingSample row;
        row.sample = s;
        row.sigma = cfg.sigmas[q];
        row.kind = cfg.kinds[k];
        row.matrix_error = matrix_error(ideal, noisy);
        row.state_infidelity = state_infidelity(ideal, noisy, psi);
        if (cfg.n_photons == 2) {
          row.fock1_infidelity = fock_state_infidelity(ideal, noisy, one);
          row.fock2_infidelity = fock_state_infidelity(ideal, noisy, two);
          row.sym2_infidelity = two_photon_state_infidelity(ideal, noisy, pair_state);
        }
        rows[s * per_sample + k * cfg.sigmas.size() + q] = row;
      }
    }
  });
  return rows;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw Error(ErrorKind::kInvalidInput, "quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

double median(std::vector<double> values) { return quantile(std::move(values), 0.5); }

}  // namespace gm
