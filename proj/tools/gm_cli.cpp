#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include "gm/errors.hpp"
#include "gm/runner.hpp"

namespace {

std::string flag_name(std::string key) {
  for (char& c : key)
    if (c == '_') c = '-';
  return "--" + key;
}

gm::Json parse_scalar(const std::string& text, const gm::Json& like, const std::string& key) {
  try {
    if (like.is_number_float()) return std::stod(text);
    if (like.is_number_integer()) return std::stoull(text);
  } catch (const std::exception&) {
    throw gm::Error(gm::ErrorKind::kConfig, "parameter '" + key + "': cannot read '" + text + "' as a number");
  }
  return text;
}

// Lists are comma separated; element type follows the default list, and an
// empty default list holds mode indices.
gm::Json parse_value(const std::string& text, const gm::Json& like, const std::string& key) {
  if (!like.is_array()) return parse_scalar(text, like, key);
  const gm::Json element = like.empty() ? gm::Json(0) : like.front();
  gm::Json out = gm::Json::array();
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!item.empty()) out.push_back(parse_scalar(item, element, key));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

struct Common {
  std::uint64_t seed = 0;
  std::string format = "csv";
  std::string out = ".";
  std::size_t threads = 1;
  std::string config;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "Master RNG seed");
  sub->add_option("--format", c.format, "Tabular output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", c.out, "Output directory");
  sub->add_option("--threads", c.threads, "Worker threads for sample loops")->check(CLI::PositiveNumber);
  sub->add_option("--config", c.config, "JSON experiment config; flags override its fields");
}

int report_error(const gm::Error& e) {
  std::cerr << "error: " << e.what() << "\n";
  return e.kind() == gm::ErrorKind::kConfig || e.kind() == gm::ErrorKind::kParse ? 2 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-bin Green Machine compiler and simulator"};
  app.require_subcommand(1);

  std::map<std::string, Common> common;
  std::map<std::string, std::map<std::string, std::string>> raw;
  std::map<std::string, CLI::App*> subs;
  const std::map<std::string, std::string> help{
      {"compile", "Compile a unitary or mesh into a switching schedule"},
      {"simulate", "Simulate a schedule on (noisy, lossy) hardware"},
      {"scaling", "Infidelity scaling study of noisy Clements meshes"},
      {"bsm", "Boosted Bell-state measurement benchmark"},
      {"transport", "Single- and two-photon transport through 50:50 meshes"},
      {"cost", "Architecture cost table and MAC-rate sweep"}};

  for (const std::string& name : gm::experiment_names()) {
    CLI::App* sub = app.add_subcommand(name, help.at(name));
    subs[name] = sub;
    add_common(sub, common[name]);
    const gm::Json defaults = gm::resolve_parameters(name, gm::Json::object());
    for (const auto& [key, value] : defaults.items()) {
      std::string desc = "default " + value.dump();
      sub->add_option(flag_name(key), raw[name][key], desc);
    }
  }

  std::string v_schedule, v_mesh, v_hw;
  double v_tol = 1e-9;
  CLI::App* verify = app.add_subcommand("verify", "Check a schedule against its mesh");
  verify->add_option("--schedule", v_schedule, "Schedule JSON")->required();
  verify->add_option("--mesh", v_mesh, "Mesh JSON")->required();
  verify->add_option("--hw", v_hw, "Hardware config JSON")->required();
  verify->add_option("--tol", v_tol, "Pass threshold on the phase-invariant distance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      const gm::VerifyReport r = gm::verify_files(v_schedule, v_mesh, v_hw, v_tol);
      char line[128];
      std::snprintf(line, sizeof line, "%s distance=%.3e tol=%.3e\n", r.pass ? "PASS" : "FAIL", r.distance, r.tolerance);
      std::cout << line;
      return r.pass ? 0 : 1;
    }
    for (const auto& [name, sub] : subs) {
      if (!sub->parsed()) continue;
      const Common& c = common[name];
      gm::ExperimentConfig cfg;
      cfg.experiment = name;
      if (!c.config.empty()) {
        cfg = gm::config_from_json(gm::read_json_file(c.config), cfg);
        if (cfg.experiment != name) {
          throw gm::Error(gm::ErrorKind::kConfig,
                          "config is for experiment '" + cfg.experiment + "', not '" + name + "'");
        }
      }
      if (sub->count("--seed")) cfg.seed = c.seed;
      if (sub->count("--format")) cfg.format = c.format == "csv" ? gm::OutputFormat::kCsv : gm::OutputFormat::kJson;
      if (sub->count("--out")) cfg.output_path = c.out;
      if (sub->count("--threads")) cfg.threads = c.threads;
      const gm::Json defaults = gm::resolve_parameters(name, gm::Json::object());
      for (const auto& [key, text] : raw[name]) {
        if (sub->count(flag_name(key))) cfg.parameters[key] = parse_value(text, defaults.at(key), key);
      }
      const gm::RunReport r = gm::run_experiment(cfg);
      for (const auto& f : r.files) std::cout << f.string() << "\n";
    }
  } catch (const gm::Error& e) {
    return report_error(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
