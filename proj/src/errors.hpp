#pragma once

#include <stdexcept>
#include <string>

namespace dfvm {

// error taxonomy mirrored by the C API status codes
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MeshError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace dfvm
