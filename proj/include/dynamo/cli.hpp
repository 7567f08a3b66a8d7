#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dynamo/types.hpp"

namespace dynamo::cli {

enum class Command { VerifyHull, Decompose, WaveCone, Sample, Residual };
enum class Format { Json, Csv };

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // mathematical failure or violation
inline constexpr int kExitUsage = 2;

struct RunConfig {
  Command command = Command::VerifyHull;
  double r = 1.0;
  double s = 1.0;
  ConeKind kind = ConeKind::NonStationary;
  std::uint64_t seed = 0;
  std::size_t count = 10000;
  double tol = 1e-9;
  Format format = Format::Json;
  std::string output;        // empty: stdout
  std::string input = "-";   // Triple JSON for decompose / wavecone; "-" is stdin
  int grid_n = 32;           // residual: finest grid
  bool residual_direction_given = false;  // residual: direction from --input instead of the seed
  bool deterministic = false;
};

/// Parses argv (argv[0] is the program name) and runs the command.
/// Returns the process exit code.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace dynamo::cli
