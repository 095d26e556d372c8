#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gm/bsm.hpp"
#include "gm/cost.hpp"
#include "gm/errors.hpp"
#include "gm/fock.hpp"
#include "gm/hwsim.hpp"
#include "gm/io.hpp"
#include "gm/mesh.hpp"
#include "gm/mzi.hpp"
#include "gm/noise.hpp"
#include "gm/runner.hpp"
#include "gm/scheduler.hpp"
#include "gm/transport.hpp"

namespace py = pybind11;
using namespace gm;

namespace {

py::dict quantiles(const Quantiles& q) {
  py::dict d;
  d["min"] = q.min;
  d["q25"] = q.q25;
  d["median"] = q.median;
  d["q75"] = q.q75;
  d["max"] = q.max;
  d["mean"] = q.mean;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Time-bin Green Machine compiler and simulator";

  static py::exception<Error> gm_error(m, "GmError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = gm_error;
      py::object instance = exc(e.what());
      instance.attr("kind") = to_string(e.kind());
      PyErr_SetObject(gm_error.ptr(), instance.ptr());
    }
  });

  // MZI
  py::class_<MZIParams>(m, "MZIParams")
      .def(py::init([](double theta, double phi, double alpha, double beta, double gamma1, double gamma2) {
             return MZIParams{theta, phi, alpha, beta, gamma1, gamma2};
           }),
           py::arg("theta") = 0.0, py::arg("phi") = 0.0, py::arg("alpha") = 0.0, py::arg("beta") = 0.0,
           py::arg("gamma1") = 1.0, py::arg("gamma2") = 1.0)
      .def_readwrite("theta", &MZIParams::theta)
      .def_readwrite("phi", &MZIParams::phi)
      .def_readwrite("alpha", &MZIParams::alpha)
      .def_readwrite("beta", &MZIParams::beta)
      .def_readwrite("gamma1", &MZIParams::gamma1)
      .def_readwrite("gamma2", &MZIParams::gamma2);
  m.def("ideal_transfer", &ideal_transfer, py::arg("theta"), py::arg("phi"));
  m.def("noisy_transfer", &noisy_transfer, py::arg("params"));
  m.def("lossy_transfer", &lossy_transfer, py::arg("params"));
  m.def(
      "splitting_bounds",
      [](const MZIParams& p) {
        const SplittingBounds b = splitting_bounds(p);
        return py::make_tuple(b.lower, b.upper);
      },
      py::arg("params"));

  // Numerics
  m.def("haar_random_unitary", py::overload_cast<std::size_t, std::uint64_t>(&haar_random_unitary), py::arg("n"),
        py::arg("seed"));
  m.def("distance_up_to_global_phase", &distance_up_to_global_phase);
  m.def("matrix_error", &matrix_error);
  m.def("dft_matrix", &dft_matrix);
  m.def("permanent", &permanent);

  // Meshes
  py::class_<MeshProgram>(m, "MeshProgram")
      .def_readonly("n_modes", &MeshProgram::n_modes)
      .def_readwrite("output_phases", &MeshProgram::output_phases)
      .def_property_readonly("topology", [](const MeshProgram& p) { return to_string(p.topology); })
      .def_property(
          "layers",
          [](const MeshProgram& p) {
            py::list layers;
            for (const Layer& l : p.layers) {
              py::list layer;
              for (const Coupling& c : l) layer.append(py::make_tuple(c.i, c.j, c.theta, c.phi));
              layers.append(layer);
            }
            return layers;
          },
          [](MeshProgram& p, const std::vector<std::vector<std::tuple<std::size_t, std::size_t, double, double>>>& v) {
            p.layers.clear();
            for (const auto& l : v) {
              Layer layer;
              for (const auto& [i, j, theta, phi] : l) layer.push_back({i, j, theta, phi});
              p.layers.push_back(std::move(layer));
            }
            validate(p);
          })
      .def_property_readonly("coupling_count", &MeshProgram::coupling_count)
      .def("unitary", [](const MeshProgram& p) { return mesh_to_unitary(p); })
      .def("to_json", [](const MeshProgram& p) { return mesh_to_json(p).dump(); })
      .def_static("from_json", [](const std::string& s) { return mesh_from_json(Json::parse(s)); });
  m.def("clements_topology", &clements_topology, py::arg("n"));
  m.def(
      "scf_topology",
      [](std::size_t n, bool minimal) { return scf_topology(n, minimal ? ScfVariant::kMinimal : ScfVariant::kFull); },
      py::arg("n"), py::arg("minimal") = false);
  m.def("prune_to_depth", &prune_to_depth, py::arg("depth"), py::arg("n") = 8);
  m.def("clements_decompose", &clements_decompose, py::arg("u"));
  m.def(
      "fit_mesh",
      [](const MeshProgram& shape, const ComplexMatrix& u, std::uint64_t seed, int restarts) {
        FitOptions opt;
        opt.seed = seed;
        opt.restarts = restarts;
        const FitResult r = fit_mesh(shape, u, opt);
        return py::make_tuple(r.program, r.residual, r.converged);
      },
      py::arg("shape"), py::arg("u"), py::arg("seed") = 1, py::arg("restarts") = 20);

  // Hardware, schedules, simulation
  py::class_<HardwareConfig>(m, "HardwareConfig")
      .def(py::init<>())
      .def_readwrite("tau", &HardwareConfig::tau)
      .def_readwrite("delay_set", &HardwareConfig::delay_set)
      .def_readwrite("eta_bs", &HardwareConfig::eta_bs)
      .def_readwrite("eta_i", &HardwareConfig::eta_i)
      .def_readwrite("eta_o", &HardwareConfig::eta_o)
      .def_readwrite("light_speed", &HardwareConfig::light_speed)
      .def_readwrite("switch_loss", &HardwareConfig::switch_loss)
      .def_readwrite("mzi", &HardwareConfig::mzi);
  m.def("clements_hardware", &clements_hardware, py::arg("tau") = 100e-12);
  m.def("scf_hardware", &scf_hardware, py::arg("n"), py::arg("tau") = 100e-12);

  py::class_<Schedule>(m, "Schedule")
      .def_readonly("n_modes", &Schedule::n_modes)
      .def_readonly("drop_round", &Schedule::drop_round)
      .def_property_readonly("n_rounds", [](const Schedule& s) { return s.rounds.size(); })
      .def_property_readonly("delays",
                             [](const Schedule& s) {
                               std::vector<std::size_t> d;
                               for (const Round& r : s.rounds) d.push_back(r.delay);
                               return d;
                             })
      .def("to_json", [](const Schedule& s) { return schedule_to_json(s).dump(); });
  m.def("compile_schedule", &compile_schedule, py::arg("mesh"), py::arg("hw"));

  py::class_<NoiseModel>(m, "NoiseModel")
      .def(py::init([](const std::string& kind, double sigma, double sigma_jitter, std::uint64_t seed) {
             return NoiseModel{noise_kind_from_string(kind), sigma, sigma_jitter, seed};
           }),
           py::arg("kind") = "correlated", py::arg("sigma") = 0.0, py::arg("sigma_jitter") = 0.0,
           py::arg("seed") = 0)
      .def_property_readonly("kind", [](const NoiseModel& n) { return to_string(n.kind); })
      .def_readonly("sigma", &NoiseModel::sigma)
      .def_readonly("seed", &NoiseModel::seed);
  m.def("simulate", &simulate, py::arg("schedule"), py::arg("hw"), py::arg("noise") = NoiseModel{},
        py::arg("circuit") = 0);
  m.def("apply_noise", &apply_noise, py::arg("mesh"), py::arg("noise"), py::arg("circuit") = 0);
  m.def(
      "loss_budget",
      [](const Schedule& s, const HardwareConfig& hw) {
        const LossBudget b = loss_budget(s, hw);
        py::dict d;
        for (const auto& [k, v] : b.breakdown) d[py::str(k)] = v;
        d["total"] = b.total_db;
        return d;
      },
      py::arg("schedule"), py::arg("hw"));
  m.def(
      "predict_infidelity",
      [](const std::string& kind, std::size_t n, double sigma, std::size_t photons) {
        return predict_infidelity(noise_kind_from_string(kind), n, sigma, photons);
      },
      py::arg("kind"), py::arg("n"), py::arg("sigma"), py::arg("n_photons") = 1);

  // Fock evolution
  m.def(
      "fock_probabilities",
      [](const ComplexMatrix& u, const OccupationVector& input) {
        const FockDistribution d = evolve(u, input);
        py::dict out;
        for (std::size_t r = 0; r < d.size(); ++r) {
          const double p = std::norm(d.amplitudes()(static_cast<Eigen::Index>(r)));
          if (p > 0.0) out[py::tuple(py::cast(d.basis().pattern(r)))] = p;
        }
        return out;
      },
      py::arg("u"), py::arg("input"));

  // Bell-state measurement
  m.def(
      "bsm_benchmark",
      [](const std::string& architecture, std::size_t depth, double sigma, double threshold, std::size_t samples,
         std::uint64_t seed) {
        BsmBenchmarkConfig cfg;
        cfg.architecture = bsm_architecture_from_string(architecture);
        cfg.depth = depth;
        cfg.sigma = sigma;
        cfg.threshold = threshold;
        cfg.n_samples = samples;
        cfg.seed = seed;
        const BsmResult r = benchmark(cfg);
        std::vector<double> success, error;
        for (const BsmSample& s : r.samples) {
          success.push_back(s.success);
          error.push_back(s.error);
        }
        py::dict d;
        d["success_rate"] = r.success_rate;
        d["error_given_heralded"] = r.error_given_heralded;
        d["success"] = quantiles(r.success);
        d["error"] = quantiles(r.error);
        d["samples_success"] = success;
        d["samples_error"] = error;
        return d;
      },
      py::arg("architecture") = "ggm", py::arg("depth") = 3, py::arg("sigma") = 0.0, py::arg("threshold") = 0.9,
      py::arg("samples") = 1000, py::arg("seed") = 0);
  m.def("loss_threshold", &loss_threshold, py::arg("target"));
  m.attr("PERCOLATION_THRESHOLD") = kPercolationThreshold;

  // Transport
  m.def(
      "run_transport",
      [](const std::string& topology, std::size_t n, std::size_t stages, const OccupationVector& input,
         const NoiseModel& noise, std::size_t circuits) {
        TransportConfig cfg;
        cfg.topology = transport_topology_from_string(topology);
        cfg.n_modes = n;
        cfg.stages = stages;
        cfg.input = input;
        cfg.noise = noise;
        cfg.n_circuits = circuits;
        const TransportRecord r = run_transport(cfg);
        py::dict d;
        d["single"] = r.single_photon_heatmap;
        d["coincidence"] = r.coincidence_heatmap;
        d["bunching"] = r.bunching_per_stage;
        d["ipr"] = r.ipr_per_stage;
        return d;
      },
      py::arg("topology") = "scf", py::arg("n") = 8, py::arg("stages") = 7,
      py::arg("input") = OccupationVector{}, py::arg("noise") = NoiseModel{}, py::arg("circuits") = 1);
  m.def("ipr", &ipr, py::arg("probabilities"));

  // Cost
  m.def(
      "architecture_cost",
      [](const std::string& arch, std::size_t n, const HardwareConfig& hw) {
        const CostReport r = architecture_cost(architecture_from_string(arch), n, hw);
        py::dict d;
        d["architecture"] = to_string(r.architecture);
        d["hardware_count"] = r.hardware_count;
        d["delay_lines"] = r.delay_lines;
        d["throughput_density"] = r.throughput_density;
        d["compile_time"] = r.compile_time;
        d["loss_db"] = r.loss_db;
        d["loss_terms"] = r.loss_terms;
        return d;
      },
      py::arg("architecture"), py::arg("n"), py::arg("hw") = HardwareConfig{});
  m.def(
      "mac_rate", [](std::size_t n, double tau, std::size_t multiplex) { return mac_rate({n, tau, multiplex}); },
      py::arg("n"), py::arg("tau"), py::arg("multiplex") = 1);

  // Experiment runner; parameters travel as a JSON string.
  m.def(
      "run_experiment",
      [](const std::string& experiment, const std::string& parameters, std::uint64_t seed,
         const std::string& output_path, const std::string& format, std::size_t threads) {
        ExperimentConfig cfg;
        cfg.experiment = experiment;
        cfg.parameters = Json::parse(parameters);
        cfg.seed = seed;
        cfg.output_path = output_path;
        if (format != "csv" && format != "json") throw Error(ErrorKind::kConfig, "format must be csv or json");
        cfg.format = format == "csv" ? OutputFormat::kCsv : OutputFormat::kJson;
        cfg.threads = threads;
        std::vector<std::string> files;
        for (const auto& f : run_experiment(cfg).files) files.push_back(f.string());
        return files;
      },
      py::arg("experiment"), py::arg("parameters") = "{}", py::arg("seed") = 0, py::arg("output_path") = ".",
      py::arg("format") = "csv", py::arg("threads") = 1);
}
