#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "gm/hardware.hpp"
#include "gm/mesh.hpp"
#include "gm/numerics.hpp"
#include "gm/scheduler.hpp"

namespace gm {

using Json = nlohmann::ordered_json;

// Matrices are stored as {"rows", "cols", "real": [[...]], "imag": [[...]]}.
Json matrix_to_json(const ComplexMatrix& u);
ComplexMatrix matrix_from_json(const Json& j);

Json mesh_to_json(const MeshProgram& m);
MeshProgram mesh_from_json(const Json& j);

Json schedule_to_json(const Schedule& s);
Schedule schedule_from_json(const Json& j);

Json hardware_to_json(const HardwareConfig& hw);
// Missing fields keep their defaults.
HardwareConfig hardware_from_json(const Json& j);

// Parse failures raise kParse naming the file plus line and column, or the
// offending field path.
Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace gm
