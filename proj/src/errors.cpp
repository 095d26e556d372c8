#include "gm/errors.hpp"

namespace gm {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidDimension: return "invalid-dimension";
    case ErrorKind::kInvalidInput: return "invalid-input";
    case ErrorKind::kInvalidProgram: return "invalid-program";
    case ErrorKind::kInvalidDepth: return "invalid-depth";
    case ErrorKind::kDegenerateDevice: return "degenerate-device";
    case ErrorKind::kSizeLimit: return "size-limit";
    case ErrorKind::kInvalidPattern: return "invalid-pattern";
    case ErrorKind::kCompile: return "compile-error";
    case ErrorKind::kSimulation: return "simulation-error";
    case ErrorKind::kInfeasible: return "infeasible";
    case ErrorKind::kInvalidDistribution: return "invalid-distribution";
    case ErrorKind::kInvalidArch: return "invalid-arch";
    case ErrorKind::kDegenerateInput: return "degenerate-input";
    case ErrorKind::kParse: return "parse-error";
    case ErrorKind::kConfig: return "config-error";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace gm
