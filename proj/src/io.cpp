#include "gm/io.hpp"

#include <fstream>
#include <sstream>

#include "gm/errors.hpp"

namespace gm {

namespace {

template <typename T>
T field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw Error(ErrorKind::kParse, where + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw Error(ErrorKind::kParse, where + "." + key + ": missing field");
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, where + "." + key + ": " + e.what());
  }
}

template <typename T>
void optional_field(const Json& j, const std::string& key, const std::string& where, T& out) {
  if (j.contains(key)) out = field<T>(j, key, where);
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& u) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index r = 0; r < u.rows(); ++r) {
    Json rr = Json::array(), ri = Json::array();
    for (Eigen::Index c = 0; c < u.cols(); ++c) {
      rr.push_back(u(r, c).real());
      ri.push_back(u(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return Json{{"rows", u.rows()}, {"cols", u.cols()}, {"real", std::move(re)}, {"imag", std::move(im)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  const auto rows = field<Eigen::Index>(j, "rows", "matrix");
  const auto cols = field<Eigen::Index>(j, "cols", "matrix");
  const auto re = field<std::vector<std::vector<double>>>(j, "real", "matrix");
  const auto im = field<std::vector<std::vector<double>>>(j, "imag", "matrix");
  if (rows <= 0 || cols <= 0 || re.size() != static_cast<std::size_t>(rows) || im.size() != re.size()) {
    throw Error(ErrorKind::kParse, "matrix: row count does not match 'rows'");
  }
  ComplexMatrix u(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto k = static_cast<std::size_t>(r);
    if (re[k].size() != static_cast<std::size_t>(cols) || im[k].size() != re[k].size()) {
      throw Error(ErrorKind::kParse, "matrix.real[" + std::to_string(r) + "]: length does not match 'cols'");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      u(r, c) = Complex(re[k][static_cast<std::size_t>(c)], im[k][static_cast<std::size_t>(c)]);
    }
  }
  return u;
}

Json mesh_to_json(const MeshProgram& m) {
  Json layers = Json::array();
  for (const Layer& l : m.layers) {
    Json layer = Json::array();
    for (const Coupling& c : l) layer.push_back({{"i", c.i}, {"j", c.j}, {"theta", c.theta}, {"phi", c.phi}});
    layers.push_back(std::move(layer));
  }
  return Json{{"n_modes", m.n_modes},
              {"topology", to_string(m.topology)},
              {"pruned_depth", m.pruned_depth},
              {"layers", std::move(layers)},
              {"output_phases", m.output_phases}};
}

MeshProgram mesh_from_json(const Json& j) {
  MeshProgram m;
  m.n_modes = field<std::size_t>(j, "n_modes", "mesh");
  if (j.contains("topology")) {
    try {
      m.topology = topology_from_string(field<std::string>(j, "topology", "mesh"));
    } catch (const Error& e) {
      throw Error(ErrorKind::kParse, std::string("mesh.topology: ") + e.what());
    }
  }
  optional_field(j, "pruned_depth", "mesh", m.pruned_depth);
  const Json layers = field<Json>(j, "layers", "mesh");
  if (!layers.is_array()) throw Error(ErrorKind::kParse, "mesh.layers: expected an array");
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const std::string where = "mesh.layers[" + std::to_string(l) + "]";
    if (!layers[l].is_array()) throw Error(ErrorKind::kParse, where + ": expected an array");
    Layer layer;
    for (std::size_t k = 0; k < layers[l].size(); ++k) {
      const std::string at = where + "[" + std::to_string(k) + "]";
      const Json& c = layers[l][k];
      layer.push_back({field<std::size_t>(c, "i", at), field<std::size_t>(c, "j", at),
                       field<double>(c, "theta", at), field<double>(c, "phi", at)});
    }
    m.layers.push_back(std::move(layer));
  }
  m.output_phases = field<std::vector<double>>(j, "output_phases", "mesh");
  validate(m);
  return m;
}

Json schedule_to_json(const Schedule& s) {
  Json rounds = Json::array();
  for (const Round& r : s.rounds) {
    Json sw1 = Json::array(), sw2 = Json::array(), mzi = Json::array();
    for (SwitchState x : r.switch1) sw1.push_back(to_string(x));
    for (SwitchState x : r.switch2) sw2.push_back(to_string(x));
    for (const MziSlot& m : r.mzi) {
      mzi.push_back({{"active", m.active}, {"theta", m.theta}, {"phi", m.phi}, {"coupling", m.coupling}});
    }
    rounds.push_back({{"delay", r.delay},
                      {"drop", r.drop},
                      {"switch1", std::move(sw1)},
                      {"mzi", std::move(mzi)},
                      {"switch2", std::move(sw2)}});
  }
  return Json{{"n_modes", s.n_modes},
              {"drop_round", s.drop_round},
              {"output_phases", s.output_phases},
              {"rounds", std::move(rounds)}};
}

Schedule schedule_from_json(const Json& j) {
  Schedule s;
  s.n_modes = field<std::size_t>(j, "n_modes", "schedule");
  s.drop_round = field<std::size_t>(j, "drop_round", "schedule");
  s.output_phases = field<std::vector<double>>(j, "output_phases", "schedule");
  const Json rounds = field<Json>(j, "rounds", "schedule");
  if (!rounds.is_array()) throw Error(ErrorKind::kParse, "schedule.rounds: expected an array");
  auto switches = [](const Json& arr, const std::string& where) {
    std::vector<SwitchState> out;
    if (!arr.is_array()) throw Error(ErrorKind::kParse, where + ": expected an array");
    for (std::size_t k = 0; k < arr.size(); ++k) {
      try {
        out.push_back(switch_state_from_string(arr[k].get<std::string>()));
      } catch (const std::exception& e) {
        throw Error(ErrorKind::kParse, where + "[" + std::to_string(k) + "]: " + e.what());
      }
    }
    return out;
  };
  for (std::size_t k = 0; k < rounds.size(); ++k) {
    const std::string where = "schedule.rounds[" + std::to_string(k) + "]";
    const Json& rj = rounds[k];
    Round r;
    r.delay = field<std::size_t>(rj, "delay", where);
    r.drop = field<bool>(rj, "drop", where);
    r.switch1 = switches(field<Json>(rj, "switch1", where), where + ".switch1");
    r.switch2 = switches(field<Json>(rj, "switch2", where), where + ".switch2");
    const Json slots = field<Json>(rj, "mzi", where);
    if (!slots.is_array()) throw Error(ErrorKind::kParse, where + ".mzi: expected an array");
    for (std::size_t t = 0; t < slots.size(); ++t) {
      const std::string at = where + ".mzi[" + std::to_string(t) + "]";
      r.mzi.push_back({field<bool>(slots[t], "active", at), field<double>(slots[t], "theta", at),
                       field<double>(slots[t], "phi", at), field<long>(slots[t], "coupling", at)});
    }
    s.rounds.push_back(std::move(r));
  }
  return s;
}

Json hardware_to_json(const HardwareConfig& hw) {
  return Json{{"tau", hw.tau},
              {"delay_set", hw.delay_set},
              {"eta_bs", hw.eta_bs},
              {"eta_i", hw.eta_i},
              {"eta_o", hw.eta_o},
              {"light_speed", hw.light_speed},
              {"switch_loss", hw.switch_loss},
              {"mzi",
               {{"alpha", hw.mzi.alpha}, {"beta", hw.mzi.beta}, {"gamma1", hw.mzi.gamma1}, {"gamma2", hw.mzi.gamma2}}}};
}

HardwareConfig hardware_from_json(const Json& j) {
  HardwareConfig hw;
  if (!j.is_object()) throw Error(ErrorKind::kParse, "hw: expected an object");
  optional_field(j, "tau", "hw", hw.tau);
  optional_field(j, "delay_set", "hw", hw.delay_set);
  optional_field(j, "eta_bs", "hw", hw.eta_bs);
  optional_field(j, "eta_i", "hw", hw.eta_i);
  optional_field(j, "eta_o", "hw", hw.eta_o);
  optional_field(j, "light_speed", "hw", hw.light_speed);
  optional_field(j, "switch_loss", "hw", hw.switch_loss);
  if (j.contains("mzi")) {
    const Json& m = j.at("mzi");
    optional_field(m, "alpha", "hw.mzi", hw.mzi.alpha);
    optional_field(m, "beta", "hw.mzi", hw.mzi.beta);
    optional_field(m, "gamma1", "hw.mzi", hw.mzi.gamma1);
    optional_field(m, "gamma2", "hw.mzi", hw.mzi.gamma2);
  }
  validate(hw);
  return hw;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kParse, path.string() + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::kParse, path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kConfig, path.string() + ": cannot write file");
  out << text;
}

void write_json_file(const std::filesystem::path& path, const Json& j) { write_text_file(path, j.dump(2) + "\n"); }

}  // namespace gm
