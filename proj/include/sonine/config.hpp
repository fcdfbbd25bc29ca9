#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

namespace sonine {

/// Budgets, tolerances and paths of a run. Read from a key=value file
/// ('#' comments) and overridden key by key; embedded in every report.
struct RunConfig {
  std::uint64_t seed = 20240917;
  int jobs = 1;

  long n_moebius = 10000000;
  double zero_height = 205.0;
  int ramanujan_zeros = 50;
  double t_cut = 300.0;
  double grid_step = 0.05;
  int contour_nodes = 4;

  double tol_functional = 1e-10;
  double tol_theta = 1e-12;
  double tol_poisson_bump = 1e-8;
  double tol_muntz = 1e-8;
  double tol_copoisson = 1e-6;
  double tol_plateau = 1e-8;
  double tol_vanish = 1e-9;
  double tol_hermite = 1e-4;
  double tol_biorth = 1e-8;

  std::string zero_table;
  std::string cache_dir;
  std::string output_dir = ".";

  /// Sets one key from its text form; ConfigError for unknown keys or
  /// malformed values.
  void set(const std::string& key, const std::string& value);
  /// Applies every key=value line of a file; ConfigError with the line
  /// number on malformed lines.
  void load(const std::string& path);
  nlohmann::json to_json() const;
};

}  // namespace sonine
