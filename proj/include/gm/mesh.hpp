#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gm/mzi.hpp"
#include "gm/numerics.hpp"

namespace gm {

struct Coupling {
  std::size_t i = 0;
  std::size_t j = 0;
  double theta = 0.0;
  double phi = 0.0;
};

using Layer = std::vector<Coupling>;

enum class Topology { kClements, kScf, kPruned, kCustom };

std::string to_string(Topology t);
Topology topology_from_string(const std::string& name);

struct MeshProgram {
  std::size_t n_modes = 0;
  std::vector<Layer> layers;
  std::vector<double> output_phases;
  Topology topology = Topology::kCustom;
  // Only meaningful for Topology::kPruned.
  std::size_t pruned_depth = 0;

  std::size_t coupling_count() const;
};

// Throws kInvalidProgram on out-of-range or overlapping couplings, i >= j, a
// wrong-length phase screen or non-finite angles.
void validate(const MeshProgram& m);

// Transfer matrix for one coupling. layer and index locate it in the program;
// `ordinal` counts couplings across the whole program in listed order.
using TransferFn =
    std::function<Eigen::Matrix2cd(const Coupling& c, std::size_t layer, std::size_t ordinal)>;

// diag(e^{i out}) L_K ... L_1 with every coupling built by `transfer`.
ComplexMatrix mesh_to_unitary(const MeshProgram& m, const TransferFn& transfer);
ComplexMatrix mesh_to_unitary(const MeshProgram& m);

// Applies a 2x2 block to rows (i, j) of `u` in place.
void apply_on_rows(ComplexMatrix& u, std::size_t i, std::size_t j, const Eigen::Matrix2cd& t);

ComplexMatrix output_phase_screen(const std::vector<double>& phases);

enum class ScfVariant { kMinimal, kFull };

// Coupling distance of each layer of the SCF mesh.
std::vector<std::size_t> scf_distances(std::size_t n, ScfVariant variant);

// Pairs (i, i + d) for every i with i mod 2d < d.
std::vector<std::pair<std::size_t, std::size_t>> scf_layer_pairs(std::size_t n, std::size_t d);

MeshProgram clements_topology(std::size_t n);
MeshProgram scf_topology(std::size_t n, ScfVariant variant = ScfVariant::kFull);

// First `depth` layers of the fully expressive 8-mode SCF mesh. All angles zero.
MeshProgram prune_to_depth(std::size_t depth, std::size_t n = 8);

MeshProgram clements_decompose(const ComplexMatrix& u);

struct FitOptions {
  std::uint64_t seed = 1;
  int restarts = 20;
  int max_iterations = 2000;
  // Stop once ||mesh - U||_F falls below this.
  double tolerance = 1e-10;
};

struct FitResult {
  MeshProgram program;
  double residual = 0.0;
  int restarts_used = 0;
  bool converged = false;
};

// Programs every angle and output phase of `shape` so that the mesh realizes
// `u`, by damped Gauss-Newton (Levenberg-Marquardt) least squares on
// ||mesh_to_unitary - u||_F^2 with analytic derivatives.
FitResult fit_mesh(const MeshProgram& shape, const ComplexMatrix& u, const FitOptions& options = {});

// Real Jacobian of vec(mesh_to_unitary) with respect to the parameter vector
// (theta_0, phi_0, theta_1, phi_1, ..., output phases), real parts stacked
// above imaginary parts. Exposed so the derivatives can be checked.
Eigen::MatrixXd mesh_jacobian(const MeshProgram& m);
Eigen::VectorXd mesh_parameters(const MeshProgram& m);
void set_mesh_parameters(MeshProgram& m, const Eigen::VectorXd& p);

// Maps an angle into [0, 2pi).
double wrap_phase(double x);

}  // namespace gm
