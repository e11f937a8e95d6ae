#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "hoi/inference.hpp"
#include "hoi/io.hpp"

namespace hoi {

enum class OutputFormat { Json, Csv, Edges };

/// Everything one CLI invocation needs. Defaults match the command-line
/// defaults.
struct RunConfig {
  /// oinfo | gradients | scan | ising-sweep | verify
  std::string command;

  std::string input;
  std::vector<std::string> columns;
  Preprocessing preprocessing = Preprocessing::None;
  Backend backend = Backend::GaussianCopula;
  double ridge = 0.0;

  /// gradients: 1, 2 or any k with n - k >= 3. scan: 3 or 4.
  int order = 1;
  /// gradients --order 2: report local O-information instead.
  bool local = false;
  int n_boot = 1000;
  double alpha = 0.05;
  std::uint64_t seed = 0;

  double beta_min = 0.0;
  double beta_max = 2.0;
  int beta_points = 64;
  /// Empty means the built-in hexagon.
  std::string couplings;
  bool sweep_pairs = false;
  bool sweep_local = false;
  bool sweep_oinfo = false;

  int random_systems = 1000;

  /// Empty means standard output.
  std::string output;
  OutputFormat format = OutputFormat::Json;
  /// Worker threads; 0 picks the hardware concurrency. Not part of the
  /// provenance since results do not depend on it.
  unsigned threads = 0;
};

/// Config as embedded in every output file.
nlohmann::json provenance(const RunConfig& config);

/// Throws std::invalid_argument on an inconsistent configuration.
void validate(const RunConfig& config);

/// Executes the command. Report data goes to config.output (or `out`),
/// notices and the one-line diagnostic on failure go to `diag`.
/// Returns 0 on success, 1 when `verify` finds a failing invariant and
/// 2 on any error.
int run(const RunConfig& config, std::ostream& out, std::ostream& diag);

}  // namespace hoi
