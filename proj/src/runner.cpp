#include "gm/runner.hpp"

#include <Eigen/Core>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "gm/bsm.hpp"
#include "gm/cost.hpp"
#include "gm/errors.hpp"
#include "gm/hwsim.hpp"
#include "gm/mesh.hpp"
#include "gm/noise.hpp"
#include "gm/scheduler.hpp"
#include "gm/transport.hpp"

namespace gm {

namespace {

constexpr const char* kVersion = "0.1.0";

const std::map<std::string, Json>& defaults() {
  static const std::map<std::string, Json> table{
      {"compile",
       {{"target", ""}, {"mesh", ""}, {"topology", "clements"}, {"depth", 3}, {"hw", ""}, {"restarts", 20}}},
      {"simulate",
       {{"schedule", ""}, {"hw", ""}, {"noise", "correlated"}, {"sigma", 0.0}, {"sigma_jitter", 0.0}, {"circuit", 0}}},
      {"scaling",
       {{"n", 16},
        {"sigmas", {0.001, 0.003, 0.01, 0.03}},
        {"kinds", {"correlated", "uncorrelated"}},
        {"samples", 100},
        {"photons", 1}}},
      {"bsm", {{"architecture", "ggm"}, {"sigma", 0.02}, {"depth", 3}, {"threshold", 0.9}, {"samples", 1000}}},
      {"transport",
       {{"topology", "scf"},
        {"n", 8},
        {"stages", 7},
        {"input", Json::array()},
        {"noise", "uncorrelated"},
        {"sigma", 0.0},
        {"circuits", 1}}},
      {"cost",
       {{"architectures", {"ggm_clements", "ggm_scf", "clements_spatial", "motes_loops", "bouchard_cascade"}},
        {"n", 100},
        {"hw", ""},
        {"tau", 100e-12},
        {"eta_bs", 0.0},
        {"eta_i", 0.0},
        {"eta_o", 0.2e-3},
        {"light_speed", 2e8},
        {"tau_sweep", {1e-12, 4.3e-12, 1e-11, 1e-10, 1e-9, 1e-8, 1e-7}},
        {"multiplex", {1, 8}}}},
  };
  return table;
}

bool compatible(const Json& def, const Json& v) {
  if (def.is_number_float()) return v.is_number();
  if (def.is_number_integer()) return v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0);
  if (def.is_string()) return v.is_string();
  if (def.is_array()) return v.is_array();
  return def.type() == v.type();
}

template <typename T>
T param(const Json& p, const std::string& key) {
  try {
    return p.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kConfig, "parameter '" + key + "': " + e.what());
  }
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Tabular output: CSV with a header row, or a JSON array of row objects.
class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

  void add(std::vector<Json> row) { rows_.push_back(std::move(row)); }

  std::string csv() const {
    std::ostringstream out;
    for (std::size_t c = 0; c < header_.size(); ++c) out << (c ? "," : "") << header_[c];
    out << "\n";
    for (const auto& row : rows_) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        out << (c ? "," : "");
        const Json& v = row[c];
        if (v.is_number_float()) {
          out << num(v.get<double>());
        } else if (v.is_string()) {
          out << v.get<std::string>();
        } else {
          out << v.dump();
        }
      }
      out << "\n";
    }
    return out.str();
  }

  Json json() const {
    Json arr = Json::array();
    for (const auto& row : rows_) {
      Json obj = Json::object();
      for (std::size_t c = 0; c < row.size(); ++c) obj[header_[c]] = row[c];
      arr.push_back(std::move(obj));
    }
    return arr;
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<Json>> rows_;
};

// NaN has no JSON form; it is written as null.
Json real(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

class Writer {
 public:
  explicit Writer(const ExperimentConfig& cfg) : cfg_(cfg) {}

  void json(const std::string& name, const Json& j) {
    write_json_file(cfg_.output_path / name, j);
    files_.push_back(cfg_.output_path / name);
  }

  void table(const std::string& stem, const Table& t) {
    if (cfg_.format == OutputFormat::kCsv) {
      write_text_file(cfg_.output_path / (stem + ".csv"), t.csv());
      files_.push_back(cfg_.output_path / (stem + ".csv"));
    } else {
      json(stem + ".json", t.json());
    }
  }

  const std::vector<std::filesystem::path>& files() const { return files_; }

 private:
  const ExperimentConfig& cfg_;
  std::vector<std::filesystem::path> files_;
};

Json quantiles_json(const Quantiles& q) {
  return Json{{"min", real(q.min)},       {"q25", real(q.q25)}, {"median", real(q.median)},
              {"q75", real(q.q75)},       {"max", real(q.max)}, {"mean", real(q.mean)}};
}

ComplexMatrix load_matrix(const std::string& path) { return matrix_from_json(read_json_file(path)); }

void run_compile(const ExperimentConfig& cfg, const Json& p, Writer& w) {
  const auto target = param<std::string>(p, "target");
  const auto mesh_path = param<std::string>(p, "mesh");
  if (target.empty() == mesh_path.empty()) {
    throw Error(ErrorKind::kConfig, "compile needs exactly one of 'target' or 'mesh'");
  }
  const auto topology = param<std::string>(p, "topology");
  MeshProgram mesh;
  Json summary = Json::object();
  if (!mesh_path.empty()) {
    mesh = mesh_from_json(read_json_file(mesh_path));
  } else {
    const ComplexMatrix u = load_matrix(target);
    if (u.rows() != u.cols() || !is_unitary(u, 1e-9)) {
      throw Error(ErrorKind::kInvalidInput, "compile target must be a square unitary matrix");
    }
    const auto n = static_cast<std::size_t>(u.rows());
    if (topology == "clements") {
      mesh = clements_decompose(u);
    } else if (topology == "scf" || topology == "pruned") {
      const MeshProgram shape =
          topology == "scf" ? scf_topology(n) : prune_to_depth(param<std::size_t>(p, "depth"), n);
      FitOptions opt;
      opt.seed = cfg.seed;
      opt.restarts = param<int>(p, "restarts");
      const FitResult fit = fit_mesh(shape, u, opt);
      mesh = fit.program;
      summary["fit_residual"] = fit.residual;
      summary["fit_restarts"] = fit.restarts_used;
      summary["fit_converged"] = fit.converged;
    } else {
      throw Error(ErrorKind::kConfig, "unknown topology '" + topology + "' (clements, scf, pruned)");
    }
    summary["reconstruction_distance"] = distance_up_to_global_phase(mesh_to_unitary(mesh), u);
  }
  const auto hw_path = param<std::string>(p, "hw");
  HardwareConfig hw;
  if (!hw_path.empty()) {
    hw = hardware_from_json(read_json_file(hw_path));
  } else if (mesh.topology == Topology::kClements) {
    hw = clements_hardware();
  } else {
    hw = scf_hardware(mesh.n_modes);
  }
  const Schedule schedule = compile_schedule(mesh, hw);
  const ScheduleStats stats = schedule_stats(schedule, hw);
  summary["n_modes"] = mesh.n_modes;
  summary["rounds"] = schedule.rounds.size();
  summary["mzi_passes"] = stats.mzi_passes;
  summary["total_time_s"] = stats.total_time;
  w.json("mesh.json", mesh_to_json(mesh));
  w.json("hw.json", hardware_to_json(hw));
  w.json("schedule.json", schedule_to_json(schedule));
  w.json("compile_summary.json", summary);
}

void run_simulate(const ExperimentConfig& cfg, const Json& p, Writer& w) {
  const auto schedule_path = param<std::string>(p, "schedule");
  if (schedule_path.empty()) throw Error(ErrorKind::kConfig, "simulate needs 'schedule'");
  const Schedule s = schedule_from_json(read_json_file(schedule_path));
  const auto hw_path = param<std::string>(p, "hw");
  const HardwareConfig hw = hw_path.empty() ? clements_hardware() : hardware_from_json(read_json_file(hw_path));
  NoiseModel noise;
  noise.kind = noise_kind_from_string(param<std::string>(p, "noise"));
  noise.sigma = param<double>(p, "sigma");
  noise.sigma_jitter = param<double>(p, "sigma_jitter");
  noise.seed = cfg.seed;
  const ComplexMatrix u = simulate(s, hw, noise, param<std::uint64_t>(p, "circuit"));
  w.json("unitary.json", matrix_to_json(u));
  const LossBudget b = loss_budget(s, hw);
  Table t({"term", "loss_db"});
  for (const auto& [name, db] : b.breakdown) t.add({name, db});
  t.add({"total", b.total_db});
  w.table("loss_budget", t);
}

void run_scaling(const ExperimentConfig& cfg, const Json& p, Writer& w) {
  ScalingConfig sc;
  sc.n = param<std::size_t>(p, "n");
  sc.sigmas = param<std::vector<double>>(p, "sigmas");
  sc.kinds.clear();
  for (const auto& k : param<std::vector<std::string>>(p, "kinds")) sc.kinds.push_back(noise_kind_from_string(k));
  sc.samples = param<std::size_t>(p, "samples");
  sc.n_photons = param<std::size_t>(p, "photons");
  sc.seed = cfg.seed;
  sc.threads = cfg.threads;
  if (sc.samples == 0 || sc.sigmas.empty() || sc.kinds.empty()) {
    throw Error(ErrorKind::kConfig, "scaling needs samples >= 1 and non-empty sigmas and kinds");
  }
  const auto rows = scaling_samples(sc);
  const bool two = sc.n_photons == 2;
  std::vector<std::string> header{"sample", "kind", "sigma", "matrix_error", "state_infidelity"};
  if (two) header.insert(header.end(), {"fock1_infidelity", "fock2_infidelity", "sym2_infidelity"});
  Table t(header);
  for (const auto& r : rows) {
    std::vector<Json> row{r.sample, to_string(r.kind), r.sigma, r.matrix_error, r.state_infidelity};
    if (two) row.insert(row.end(), {r.fock1_infidelity, r.fock2_infidelity, r.sym2_infidelity});
    t.add(std::move(row));
  }
  w.table("scaling", t);

  Json summary = Json::array();
  for (NoiseKind k : sc.kinds) {
    for (double sigma : sc.sigmas) {
      std::vector<double> me, si, f1, f2;
      for (const auto& r : rows) {
        if (r.kind != k || r.sigma != sigma) continue;
        me.push_back(r.matrix_error);
        si.push_back(r.state_infidelity);
        f1.push_back(r.fock1_infidelity);
        f2.push_back(r.fock2_infidelity);
      }
      Json e{{"kind", to_string(k)},
             {"sigma", sigma},
             {"prediction", predict_infidelity(k, sc.n, sigma)},
             {"median_matrix_error", median(me)},
             {"median_state_infidelity", median(si)}};
      if (two) {
        e["median_fock1_infidelity"] = median(f1);
        e["median_fock2_infidelity"] = median(f2);
      }
      summary.push_back(std::move(e));
    }
  }
  w.json("scaling_summary.json", summary);
}

void run_bsm(const ExperimentConfig& cfg, const Json& p, Writer& w) {
  BsmBenchmarkConfig bc;
  bc.architecture = bsm_architecture_from_string(param<std::string>(p, "architecture"));
  bc.sigma = param<double>(p, "sigma");
  bc.depth = param<std::size_t>(p, "depth");
  bc.threshold = param<double>(p, "threshold");
  bc.n_samples = param<std::size_t>(p, "samples");
  bc.seed = cfg.seed;
  bc.threads = cfg.threads;
  const BsmResult r = benchmark(bc);
  Table t({"sample", "success", "error_given_heralded"});
  for (const BsmSample& s : r.samples) t.add({s.sample, s.success, real(s.error)});
  w.table("bsm", t);
  w.json("bsm_summary.json", Json{{"architecture", to_string(bc.architecture)},
                                   {"samples", r.samples.size()},
                                   {"mean_success", real(r.success_rate)},
                                   {"mean_error_given_heralded", real(r.error_given_heralded)},
                                   {"success", quantiles_json(r.success)},
                                   {"error_given_heralded", quantiles_json(r.error)},
                                   {"percolation_threshold", kPercolationThreshold}});
}

void run_transport_experiment(const ExperimentConfig& cfg, const Json& p, Writer& w) {
  TransportConfig tc;
  tc.topology = transport_topology_from_string(param<std::string>(p, "topology"));
  tc.n_modes = param<std::size_t>(p, "n");
  tc.stages = param<std::size_t>(p, "stages");
  const auto modes = param<std::vector<std::size_t>>(p, "input");
  if (!modes.empty()) {
    tc.input.assign(tc.n_modes, 0);
    for (std::size_t m : modes) {
      if (m >= tc.n_modes) throw Error(ErrorKind::kInvalidPattern, "input mode out of range");
      tc.input[m] += 1;
    }
  }
  tc.noise.kind = noise_kind_from_string(param<std::string>(p, "noise"));
  tc.noise.sigma = param<double>(p, "sigma");
  tc.noise.seed = cfg.seed;
  tc.n_circuits = param<std::size_t>(p, "circuits");
  tc.threads = cfg.threads;
  const TransportRecord r = run_transport(tc);

  auto heatmap = [&](const std::vector<std::vector<double>>& rows) {
    std::vector<std::string> header{"stage"};
    for (std::size_t m = 0; m < r.n_modes; ++m) header.push_back("mode_" + std::to_string(m));
    Table t(header);
    for (std::size_t s = 0; s < rows.size(); ++s) {
      std::vector<Json> row{s + 1};
      for (double v : rows[s]) row.push_back(v);
      t.add(std::move(row));
    }
    return t;
  };
  w.table("transport_single", heatmap(r.single_photon_heatmap));
  w.table("transport_coincidence", heatmap(r.coincidence_heatmap));
  Table stages({"stage", "distance", "ipr", "bunching"});
  const auto distances = transport_stage_distances(tc.topology, tc.n_modes, tc.stages);
  for (std::size_t s = 0; s < r.stages; ++s) {
    stages.add({s + 1, distances[s], r.ipr_per_stage[s], r.bunching_per_stage[s]});
  }
  w.table("transport_stages", stages);
}

void run_cost(const ExperimentConfig&, const Json& p, Writer& w) {
  const auto n = param<std::size_t>(p, "n");
  const auto hw_path = param<std::string>(p, "hw");
  HardwareConfig hw;
  if (!hw_path.empty()) {
    hw = hardware_from_json(read_json_file(hw_path));
  } else {
    hw.tau = param<double>(p, "tau");
    hw.eta_bs = param<double>(p, "eta_bs");
    hw.eta_i = param<double>(p, "eta_i");
    hw.eta_o = param<double>(p, "eta_o");
    hw.light_speed = param<double>(p, "light_speed");
    validate(hw);
  }
  Table t({"architecture", "n_modes", "hardware_count", "delay_lines", "throughput_density", "compile_time_s",
           "loss_db", "loss_mzi_db", "loss_inner_delay_db", "loss_outer_loop_db"});
  for (const auto& name : param<std::vector<std::string>>(p, "architectures")) {
    const CostReport r = architecture_cost(architecture_from_string(name), n, hw);
    t.add({to_string(r.architecture), r.n_modes, r.hardware_count, r.delay_lines, r.throughput_density,
           r.compile_time, r.loss_db, r.loss_terms.at("mzi"), r.loss_terms.at("inner_delay"),
           r.loss_terms.at("outer_loop")});
  }
  w.table("cost", t);
  Table rate({"tau_s", "multiplex", "mac_rate"});
  for (std::size_t m : param<std::vector<std::size_t>>(p, "multiplex")) {
    for (double tau : param<std::vector<double>>(p, "tau_sweep")) rate.add({tau, m, mac_rate({n, tau, m})});
  }
  w.table("mac_rate", rate);
}

std::string format_name(OutputFormat f) { return f == OutputFormat::kCsv ? "csv" : "json"; }

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"compile", "simulate", "scaling", "bsm", "transport", "cost"};
  return names;
}

Json resolve_parameters(const std::string& experiment, const Json& given) {
  const auto it = defaults().find(experiment);
  if (it == defaults().end()) throw Error(ErrorKind::kConfig, "unknown experiment '" + experiment + "'");
  if (!given.is_object()) throw Error(ErrorKind::kConfig, "parameters must be a JSON object");
  Json out = it->second;
  for (const auto& [key, value] : given.items()) {
    if (!out.contains(key)) {
      throw Error(ErrorKind::kConfig, "unknown parameter '" + key + "' for experiment '" + experiment + "'");
    }
    if (!compatible(out[key], value)) {
      throw Error(ErrorKind::kConfig, "parameter '" + key + "' expects " + std::string(out[key].type_name()) +
                                          ", got " + value.type_name());
    }
    out[key] = value;
  }
  return out;
}

ExperimentConfig config_from_json(const Json& j, ExperimentConfig base) {
  if (!j.is_object()) throw Error(ErrorKind::kConfig, "config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "experiment") {
        base.experiment = value.get<std::string>();
      } else if (key == "seed") {
        base.seed = value.get<std::uint64_t>();
      } else if (key == "output_path") {
        base.output_path = value.get<std::string>();
      } else if (key == "threads") {
        base.threads = value.get<std::size_t>();
      } else if (key == "format") {
        const auto f = value.get<std::string>();
        if (f != "csv" && f != "json") throw Error(ErrorKind::kConfig, "format must be csv or json");
        base.format = f == "csv" ? OutputFormat::kCsv : OutputFormat::kJson;
      } else if (key == "parameters") {
        if (!value.is_object()) throw Error(ErrorKind::kConfig, "parameters must be a JSON object");
        for (const auto& [pk, pv] : value.items()) base.parameters[pk] = pv;
      } else {
        throw Error(ErrorKind::kConfig, "unknown config field '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kConfig, std::string("config: ") + e.what());
  }
  return base;
}

RunReport run_experiment(const ExperimentConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const Json params = resolve_parameters(cfg.experiment, cfg.parameters);
  if (cfg.threads == 0) throw Error(ErrorKind::kConfig, "threads must be >= 1");
  Writer w(cfg);
  if (cfg.experiment == "compile") {
    run_compile(cfg, params, w);
  } else if (cfg.experiment == "simulate") {
    run_simulate(cfg, params, w);
  } else if (cfg.experiment == "scaling") {
    run_scaling(cfg, params, w);
  } else if (cfg.experiment == "bsm") {
    run_bsm(cfg, params, w);
  } else if (cfg.experiment == "transport") {
    run_transport_experiment(cfg, params, w);
  } else {
    run_cost(cfg, params, w);
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  RunReport report;
  report.files = w.files();
  Json outputs = Json::array();
  for (const auto& f : report.files) outputs.push_back(f.filename().string());
  report.manifest = Json{{"experiment", cfg.experiment},
                         {"seed", cfg.seed},
                         {"format", format_name(cfg.format)},
                         {"threads", cfg.threads},
                         {"parameters", params},
                         {"outputs", outputs},
                         {"versions",
                          {{"gm", kVersion},
                           {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                                         "." + std::to_string(EIGEN_MINOR_VERSION)},
                           {"compiler", __VERSION__}}},
                         {"wall_time_s", wall}};
  write_json_file(cfg.output_path / "manifest.json", report.manifest);
  return report;
}

VerifyReport verify_files(const std::filesystem::path& schedule_path, const std::filesystem::path& mesh_path,
                          const std::filesystem::path& hw_path, double tolerance) {
  const Schedule s = schedule_from_json(read_json_file(schedule_path));
  const MeshProgram m = mesh_from_json(read_json_file(mesh_path));
  const HardwareConfig hw = hardware_from_json(read_json_file(hw_path));
  if (s.n_modes != m.n_modes) {
    throw Error(ErrorKind::kInvalidDimension, "schedule has " + std::to_string(s.n_modes) + " modes, mesh has " +
                                                  std::to_string(m.n_modes));
  }
  VerifyReport r;
  r.tolerance = tolerance;
  r.distance = distance_up_to_global_phase(simulate(s, hw), mesh_to_unitary(m));
  r.pass = r.distance < tolerance;
  return r;
}

}  // namespace gm
