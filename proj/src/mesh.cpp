#include "gm/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gm/errors.hpp"
#include "gm/random.hpp"

namespace gm {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::vector<std::size_t> fractal_distances(std::size_t n) {
  if (n <= 1) return {};
  if (n == 2) return {1};
  std::vector<std::size_t> half = fractal_distances(n / 2);
  std::vector<std::size_t> out = half;
  out.push_back(n / 2);
  out.insert(out.end(), half.begin(), half.end());
  return out;
}

Layer layer_at_distance(std::size_t n, std::size_t d) {
  Layer layer;
  for (auto [i, j] : scf_layer_pairs(n, d)) layer.push_back({i, j, 0.0, 0.0});
  return layer;
}

// d T / d theta for the ideal transfer.
Eigen::Matrix2cd d_theta(double theta, double phi) {
  const double s = std::sin(0.5 * theta);
  const double c = std::cos(0.5 * theta);
  const Complex e = std::polar(1.0, phi);
  const Complex pre = kI * std::polar(1.0, 0.5 * theta);
  Eigen::Matrix2cd body;
  body << e * s, c, e * c, -s;
  Eigen::Matrix2cd dbody;
  dbody << 0.5 * e * c, -0.5 * s, -0.5 * e * s, -0.5 * c;
  return 0.5 * kI * pre * body + pre * dbody;
}

Eigen::Matrix2cd d_phi(double theta, double phi) {
  Eigen::Matrix2cd t = ideal_transfer(theta, phi);
  t.col(0) *= kI;
  t.col(1).setZero();
  return t;
}

ComplexMatrix layer_matrix(std::size_t n, const Layer& layer) {
  ComplexMatrix l = ComplexMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (const Coupling& c : layer) {
    const Eigen::Matrix2cd t = ideal_transfer(c.theta, c.phi);
    const auto i = static_cast<Eigen::Index>(c.i);
    const auto j = static_cast<Eigen::Index>(c.j);
    l(i, i) = t(0, 0);
    l(i, j) = t(0, 1);
    l(j, i) = t(1, 0);
    l(j, j) = t(1, 1);
  }
  return l;
}

}  // namespace

std::string to_string(Topology t) {
  switch (t) {
    case Topology::kClements: return "clements";
    case Topology::kScf: return "scf";
    case Topology::kPruned: return "pruned";
    case Topology::kCustom: return "custom";
  }
  return "custom";
}

Topology topology_from_string(const std::string& name) {
  if (name == "clements") return Topology::kClements;
  if (name == "scf") return Topology::kScf;
  if (name == "pruned") return Topology::kPruned;
  if (name == "custom") return Topology::kCustom;
  throw Error(ErrorKind::kParse, "unknown topology '" + name + "'");
}

std::size_t MeshProgram::coupling_count() const {
  std::size_t total = 0;
  for (const Layer& l : layers) total += l.size();
  return total;
}

void validate(const MeshProgram& m) {
  if (m.output_phases.size() != m.n_modes) {
    throw Error(ErrorKind::kInvalidProgram,
                "output_phases has " + std::to_string(m.output_phases.size()) + " entries for " +
                    std::to_string(m.n_modes) + " modes");
  }
  for (double p : m.output_phases) {
    if (!std::isfinite(p)) throw Error(ErrorKind::kInvalidProgram, "non-finite output phase");
  }
  std::vector<std::size_t> seen(m.n_modes, 0);
  for (std::size_t l = 0; l < m.layers.size(); ++l) {
    const std::size_t stamp = l + 1;
    for (const Coupling& c : m.layers[l]) {
      if (c.i >= c.j || c.j >= m.n_modes) {
        throw Error(ErrorKind::kInvalidProgram,
                    "layer " + std::to_string(l) + ": coupling (" + std::to_string(c.i) + ", " +
                        std::to_string(c.j) + ") is out of range or not ordered");
      }
      if (!std::isfinite(c.theta) || !std::isfinite(c.phi)) {
        throw Error(ErrorKind::kInvalidProgram, "layer " + std::to_string(l) + ": non-finite angle");
      }
      if (seen[c.i] == stamp || seen[c.j] == stamp) {
        throw Error(ErrorKind::kInvalidProgram,
                    "layer " + std::to_string(l) + ": couplings overlap on mode " +
                        std::to_string(seen[c.i] == stamp ? c.i : c.j));
      }
      seen[c.i] = stamp;
      seen[c.j] = stamp;
    }
  }
}

void apply_on_rows(ComplexMatrix& u, std::size_t i, std::size_t j, const Eigen::Matrix2cd& t) {
  const auto ri = static_cast<Eigen::Index>(i);
  const auto rj = static_cast<Eigen::Index>(j);
  for (Eigen::Index c = 0; c < u.cols(); ++c) {
    const Complex a = u(ri, c);
    const Complex b = u(rj, c);
    u(ri, c) = t(0, 0) * a + t(0, 1) * b;
    u(rj, c) = t(1, 0) * a + t(1, 1) * b;
  }
}

ComplexMatrix output_phase_screen(const std::vector<double>& phases) {
  const auto n = static_cast<Eigen::Index>(phases.size());
  ComplexMatrix d = ComplexMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) d(k, k) = std::polar(1.0, phases[static_cast<std::size_t>(k)]);
  return d;
}

ComplexMatrix mesh_to_unitary(const MeshProgram& m, const TransferFn& transfer) {
  validate(m);
  const auto n = static_cast<Eigen::Index>(m.n_modes);
  // Row-major so that each coupling touches two contiguous rows.
  Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> u =
      ComplexMatrix::Identity(n, n);
  Eigen::Matrix<Complex, 1, Eigen::Dynamic> scratch(n);
  std::size_t ordinal = 0;
  for (std::size_t l = 0; l < m.layers.size(); ++l) {
    for (const Coupling& c : m.layers[l]) {
      const Eigen::Matrix2cd t = transfer(c, l, ordinal++);
      const auto i = static_cast<Eigen::Index>(c.i);
      const auto j = static_cast<Eigen::Index>(c.j);
      scratch = u.row(i);
      u.row(i) = t(0, 0) * scratch + t(0, 1) * u.row(j);
      u.row(j) = t(1, 0) * scratch + t(1, 1) * u.row(j);
    }
  }
  for (Eigen::Index k = 0; k < n; ++k) u.row(k) *= std::polar(1.0, m.output_phases[static_cast<std::size_t>(k)]);
  return u;
}

ComplexMatrix mesh_to_unitary(const MeshProgram& m) {
  return mesh_to_unitary(m, [](const Coupling& c, std::size_t, std::size_t) {
    return ideal_transfer(c.theta, c.phi);
  });
}

std::vector<std::pair<std::size_t, std::size_t>> scf_layer_pairs(std::size_t n, std::size_t d) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (d == 0) return pairs;
  for (std::size_t i = 0; i + d < n; ++i) {
    if (i % (2 * d) < d) pairs.emplace_back(i, i + d);
  }
  return pairs;
}

// The fully expressive order starts with the minimal (Hadamard) sweep
// [n/2, ..., 1] and continues with the cycle [n/2] + fractal(n/2), truncated
// at n - 1 layers. For n = 8 this is [4, 2, 1, 4, 1, 2, 1].
std::vector<std::size_t> scf_distances(std::size_t n, ScfVariant variant) {
  if (n < 2 || !is_power_of_two(n)) {
    throw Error(ErrorKind::kInvalidDimension,
                "SCF mesh needs a power-of-two mode count >= 2, got " + std::to_string(n));
  }
  std::vector<std::size_t> out;
  for (std::size_t d = n / 2; d >= 1; d /= 2) out.push_back(d);
  if (variant == ScfVariant::kMinimal) return out;
  std::vector<std::size_t> cycle{n / 2};
  const std::vector<std::size_t> tail = fractal_distances(n / 2);
  cycle.insert(cycle.end(), tail.begin(), tail.end());
  for (std::size_t k = 0; out.size() < n - 1; ++k) out.push_back(cycle[k % cycle.size()]);
  out.resize(n - 1);
  return out;
}

MeshProgram clements_topology(std::size_t n) {
  if (n < 2) throw Error(ErrorKind::kInvalidDimension, "Clements mesh needs n >= 2");
  MeshProgram m;
  m.n_modes = n;
  m.topology = Topology::kClements;
  m.output_phases.assign(n, 0.0);
  for (std::size_t l = 0; l < n; ++l) {
    Layer layer;
    for (std::size_t k = l % 2; k + 1 < n; k += 2) layer.push_back({k, k + 1, 0.0, 0.0});
    if (!layer.empty()) m.layers.push_back(std::move(layer));
  }
  return m;
}

MeshProgram scf_topology(std::size_t n, ScfVariant variant) {
  MeshProgram m;
  m.n_modes = n;
  m.topology = Topology::kScf;
  m.output_phases.assign(n, 0.0);
  for (std::size_t d : scf_distances(n, variant)) m.layers.push_back(layer_at_distance(n, d));
  return m;
}

MeshProgram prune_to_depth(std::size_t depth, std::size_t n) {
  if (n != 8) throw Error(ErrorKind::kInvalidDimension, "pruned meshes are defined for n = 8 only");
  if (depth < 3 || depth > 7) {
    throw Error(ErrorKind::kInvalidDepth, "depth must be in [3, 7], got " + std::to_string(depth));
  }
  MeshProgram m = scf_topology(n, ScfVariant::kFull);
  m.layers.resize(depth);
  m.topology = Topology::kPruned;
  m.pruned_depth = depth;
  return m;
}

double wrap_phase(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

// Nulls the lower-left triangle of U by alternating column operations from the
// right (U T^-1) and row operations from the left (T U), then moves the
// leftover diagonal through the left-hand couplings so that every phase ends
// up on the output side.
MeshProgram clements_decompose(const ComplexMatrix& target) {
  if (target.rows() != target.cols() || target.rows() == 0) {
    throw Error(ErrorKind::kInvalidDimension, "clements_decompose: matrix must be square and non-empty");
  }
  if (!all_finite(target) || !is_unitary(target, 1e-10 * std::sqrt(static_cast<double>(target.rows())))) {
    throw Error(ErrorKind::kInvalidInput, "clements_decompose: input is not unitary within tolerance");
  }
  const std::size_t n = static_cast<std::size_t>(target.rows());
  MeshProgram result;
  result.n_modes = n;
  result.topology = Topology::kClements;
  if (n == 1) {
    result.output_phases = {wrap_phase(std::arg(target(0, 0)))};
    return result;
  }

  ComplexMatrix u = target;
  std::vector<Coupling> right;
  std::vector<Coupling> left;

  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      if (i % 2 == 0) {
        const std::size_t row = n - 1 - j;
        const std::size_t k = i - j;
        const Complex a = u(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(k));
        const Complex b = u(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(k + 1));
        const double theta = 2.0 * std::atan2(std::abs(b), std::abs(a));
        const double phi = wrap_phase(std::arg(a) - std::arg(b) - std::numbers::pi);
        const Eigen::Matrix2cd tinv = ideal_transfer(theta, phi).adjoint();
        // Column update U <- U Tinv on columns (k, k+1).
        for (Eigen::Index r = 0; r < u.rows(); ++r) {
          const Complex x = u(r, static_cast<Eigen::Index>(k));
          const Complex y = u(r, static_cast<Eigen::Index>(k + 1));
          u(r, static_cast<Eigen::Index>(k)) = x * tinv(0, 0) + y * tinv(1, 0);
          u(r, static_cast<Eigen::Index>(k + 1)) = x * tinv(0, 1) + y * tinv(1, 1);
        }
        right.push_back({k, k + 1, theta, phi});
      } else {
        const std::size_t col = j;
        const std::size_t k = n - 2 - i + j;
        const Complex a = u(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(col));
        const Complex b = u(static_cast<Eigen::Index>(k + 1), static_cast<Eigen::Index>(col));
        const double theta = 2.0 * std::atan2(std::abs(a), std::abs(b));
        const double phi = wrap_phase(std::arg(b) - std::arg(a));
        apply_on_rows(u, k, k + 1, ideal_transfer(theta, phi));
        left.push_back({k, k + 1, theta, phi});
      }
    }
  }

  std::vector<Complex> d(n);
  for (std::size_t k = 0; k < n; ++k) d[k] = u(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));

  // T^-1(theta, phi) diag(d1, d2) = diag(d1', d2') T(theta, phi') with
  // phi' = arg d1 - arg d2, d1' = -e^{-i theta} e^{-i phi} d2, d2' = -e^{-i theta} d2.
  std::vector<Coupling> pushed;
  for (auto it = left.rbegin(); it != left.rend(); ++it) {
    const Complex d1 = d[it->i];
    const Complex d2 = d[it->j];
    const Complex shift = -std::polar(1.0, -it->theta);
    d[it->i] = shift * std::polar(1.0, -it->phi) * d2;
    d[it->j] = shift * d2;
    pushed.push_back({it->i, it->j, it->theta, wrap_phase(std::arg(d1) - std::arg(d2))});
  }

  std::vector<Coupling> ordered = right;
  ordered.insert(ordered.end(), pushed.begin(), pushed.end());

  // Pack into the n-layer Clements grid: each coupling on (k, k+1) goes to the
  // earliest layer of matching parity after the last layer touching its modes.
  MeshProgram grid = clements_topology(n);
  // slot[l][k] marks whether layer l already holds a coupling on (k, k+1).
  std::vector<std::vector<bool>> filled(grid.layers.size(), std::vector<bool>(n, false));
  std::vector<std::size_t> next(n, 0);
  for (const Coupling& c : ordered) {
    std::size_t l = std::max(next[c.i], next[c.j]);
    if (l % 2 != c.i % 2) ++l;
    if (l >= grid.layers.size()) {
      throw Error(ErrorKind::kInvalidProgram, "clements_decompose: coupling does not fit the mesh");
    }
    for (Coupling& slot : grid.layers[l]) {
      if (slot.i == c.i) {
        slot.theta = c.theta;
        slot.phi = c.phi;
      }
    }
    filled[l][c.i] = true;
    next[c.i] = next[c.j] = l + 1;
  }
  // Slots left empty become identities; T(pi, pi) = I.
  for (std::size_t l = 0; l < grid.layers.size(); ++l) {
    for (Coupling& slot : grid.layers[l]) {
      if (!filled[l][slot.i]) {
        slot.theta = std::numbers::pi;
        slot.phi = std::numbers::pi;
      }
    }
  }
  result.layers = std::move(grid.layers);
  result.output_phases.resize(n);
  for (std::size_t k = 0; k < n; ++k) result.output_phases[k] = wrap_phase(std::arg(d[k]));
  return result;
}

Eigen::VectorXd mesh_parameters(const MeshProgram& m) {
  Eigen::VectorXd p(static_cast<Eigen::Index>(2 * m.coupling_count() + m.n_modes));
  Eigen::Index k = 0;
  for (const Layer& layer : m.layers) {
    for (const Coupling& c : layer) {
      p(k++) = c.theta;
      p(k++) = c.phi;
    }
  }
  for (double ph : m.output_phases) p(k++) = ph;
  return p;
}

void set_mesh_parameters(MeshProgram& m, const Eigen::VectorXd& p) {
  if (p.size() != static_cast<Eigen::Index>(2 * m.coupling_count() + m.n_modes)) {
    throw Error(ErrorKind::kInvalidDimension, "parameter vector length does not match the mesh");
  }
  Eigen::Index k = 0;
  for (Layer& layer : m.layers) {
    for (Coupling& c : layer) {
      c.theta = p(k++);
      c.phi = p(k++);
    }
  }
  m.output_phases.resize(m.n_modes);
  for (double& ph : m.output_phases) ph = p(k++);
}

Eigen::MatrixXd mesh_jacobian(const MeshProgram& m) {
  validate(m);
  const auto n = static_cast<Eigen::Index>(m.n_modes);
  const std::size_t depth = m.layers.size();
  const Eigen::Index entries = n * n;
  Eigen::MatrixXd jac(2 * entries, static_cast<Eigen::Index>(2 * m.coupling_count() + m.n_modes));

  std::vector<ComplexMatrix> layer_mats;
  layer_mats.reserve(depth);
  for (const Layer& layer : m.layers) layer_mats.push_back(layer_matrix(m.n_modes, layer));

  // prefix[l] = L_{l-1} ... L_0
  std::vector<ComplexMatrix> prefix(depth + 1);
  prefix[0] = ComplexMatrix::Identity(n, n);
  for (std::size_t l = 0; l < depth; ++l) prefix[l + 1] = layer_mats[l] * prefix[l];

  const ComplexMatrix screen = output_phase_screen(m.output_phases);
  // suffix = D L_{K-1} ... L_{l+1}, built from the back.
  std::vector<ComplexMatrix> suffix(depth);
  ComplexMatrix acc = screen;
  for (std::size_t l = depth; l-- > 0;) {
    suffix[l] = acc;
    acc = acc * layer_mats[l];
  }

  auto put = [&](Eigen::Index col, const ComplexMatrix& dm) {
    for (Eigen::Index e = 0; e < entries; ++e) {
      jac(e, col) = dm.data()[e].real();
      jac(e + entries, col) = dm.data()[e].imag();
    }
  };

  Eigen::Index col = 0;
  for (std::size_t l = 0; l < depth; ++l) {
    for (const Coupling& c : m.layers[l]) {
      const auto i = static_cast<Eigen::Index>(c.i);
      const auto j = static_cast<Eigen::Index>(c.j);
      ComplexMatrix left(n, 2);
      left.col(0) = suffix[l].col(i);
      left.col(1) = suffix[l].col(j);
      ComplexMatrix right(2, n);
      right.row(0) = prefix[l].row(i);
      right.row(1) = prefix[l].row(j);
      put(col++, left * d_theta(c.theta, c.phi) * right);
      put(col++, left * d_phi(c.theta, c.phi) * right);
    }
  }
  const ComplexMatrix full = screen * prefix[depth];
  for (Eigen::Index k = 0; k < n; ++k) {
    ComplexMatrix dm = ComplexMatrix::Zero(n, n);
    dm.row(k) = kI * full.row(k);
    put(col++, dm);
  }
  return jac;
}

FitResult fit_mesh(const MeshProgram& shape, const ComplexMatrix& u, const FitOptions& options) {
  validate(shape);
  if (u.rows() != static_cast<Eigen::Index>(shape.n_modes) || u.cols() != u.rows()) {
    throw Error(ErrorKind::kInvalidDimension, "fit_mesh: target size does not match the mesh");
  }
  const Eigen::Index entries = u.size();
  auto residual = [&](const MeshProgram& m) {
    const ComplexMatrix diff = mesh_to_unitary(m) - u;
    Eigen::VectorXd r(2 * entries);
    for (Eigen::Index e = 0; e < entries; ++e) {
      r(e) = diff.data()[e].real();
      r(e + entries) = diff.data()[e].imag();
    }
    return r;
  };

  FitResult best;
  best.program = shape;
  best.residual = std::numeric_limits<double>::infinity();
  MeshProgram trial = shape;
  const Eigen::Index np = static_cast<Eigen::Index>(2 * shape.coupling_count() + shape.n_modes);

  for (int restart = 0; restart < options.restarts; ++restart) {
    Rng rng = make_rng(options.seed, {static_cast<std::uint64_t>(restart)});
    Eigen::VectorXd p(np);
    for (Eigen::Index k = 0; k < np; ++k) p(k) = kTwoPi * uniform01(rng);
    set_mesh_parameters(trial, p);
    Eigen::VectorXd r = residual(trial);
    double cost = r.squaredNorm();
    double lambda = 1e-3;

    for (int it = 0; it < options.max_iterations; ++it) {
      if (std::sqrt(cost) < options.tolerance) break;
      const Eigen::MatrixXd jac = mesh_jacobian(trial);
      const Eigen::MatrixXd jtj = jac.transpose() * jac;
      const Eigen::VectorXd grad = jac.transpose() * r;
      bool improved = false;
      while (lambda < 1e12) {
        Eigen::MatrixXd a = jtj;
        a.diagonal().array() += lambda * (1.0 + jtj.diagonal().array());
        const Eigen::VectorXd step = a.ldlt().solve(-grad);
        MeshProgram candidate = trial;
        set_mesh_parameters(candidate, p + step);
        const Eigen::VectorXd rc = residual(candidate);
        const double cc = rc.squaredNorm();
        if (cc < cost) {
          p += step;
          trial = std::move(candidate);
          r = rc;
          cost = cc;
          lambda = std::max(lambda / 3.0, 1e-12);
          improved = true;
          break;
        }
        lambda *= 4.0;
      }
      if (!improved) break;
    }

    const double res = std::sqrt(cost);
    if (res < best.residual) {
      best.program = trial;
      best.residual = res;
      best.restarts_used = restart + 1;
    }
    if (res < options.tolerance) break;
  }

  best.converged = best.residual < options.tolerance;
  for (Layer& layer : best.program.layers) {
    for (Coupling& c : layer) {
      c.theta = wrap_phase(c.theta);
      c.phi = wrap_phase(c.phi);
    }
  }
  for (double& ph : best.program.output_phases) ph = wrap_phase(ph);
  best.residual = (mesh_to_unitary(best.program) - u).norm();
  return best;
}

}  // namespace gm
