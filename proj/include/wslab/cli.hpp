#pragma once

#include <string>
#include <vector>

namespace wslab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCounterexample = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInvalidInput = 3;
inline constexpr int kExitResourceLimit = 4;

struct Result {
  int exit_code = kExitOk;
  std::string out;
  std::string err;
};

/// Runs one command (arguments without the program name). Output is a pure
/// function of the arguments and the WSLAB_VERTEX_CAP environment variable.
Result run(const std::vector<std::string>& args);

}  // namespace wslab::cli
