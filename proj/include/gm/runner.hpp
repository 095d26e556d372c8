#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gm/io.hpp"

namespace gm {

enum class OutputFormat { kCsv, kJson };

struct ExperimentConfig {
  // compile, simulate, scaling, bsm, transport or cost.
  std::string experiment;
  // Experiment-specific keys; anything omitted takes its default.
  Json parameters = Json::object();
  std::uint64_t seed = 0;
  std::filesystem::path output_path = ".";
  OutputFormat format = OutputFormat::kCsv;
  std::size_t threads = 1;
};

struct RunReport {
  // Data files written under output_path, in write order.
  std::vector<std::filesystem::path> files;
  // Also written to output_path / "manifest.json".
  Json manifest;
};

// Reads {"experiment", "seed", "format", "output_path", "threads",
// "parameters"}. Fields that are absent keep the values already in `base`.
ExperimentConfig config_from_json(const Json& j, ExperimentConfig base = {});

// Parameter table of an experiment with defaults filled in. Unknown keys and
// wrongly typed values raise kConfig.
Json resolve_parameters(const std::string& experiment, const Json& given);

const std::vector<std::string>& experiment_names();

RunReport run_experiment(const ExperimentConfig& cfg);

struct VerifyReport {
  double distance = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// Simulates the schedule on noiseless hardware and compares it with the mesh
// up to a global phase.
VerifyReport verify_files(const std::filesystem::path& schedule, const std::filesystem::path& mesh,
                          const std::filesystem::path& hw, double tolerance);

}  // namespace gm
