#pragma once

#include <stdexcept>
#include <string>

namespace gm {

enum class ErrorKind {
  kInvalidDimension,
  kInvalidInput,
  kInvalidProgram,
  kInvalidDepth,
  kDegenerateDevice,
  kSizeLimit,
  kInvalidPattern,
  kCompile,
  kSimulation,
  kInfeasible,
  kInvalidDistribution,
  kInvalidArch,
  kDegenerateInput,
  kParse,
  kConfig,
};

const char* to_string(ErrorKind kind);

// Every failure raised by the library carries one of the kinds above so
// callers (and the CLI) can branch on it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace gm
