#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "qps/symbols.hpp"

namespace qps::cli {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct JobConfig {
  double alpha = 0.0;
  // exactly one of the two symbol sources is set
  std::optional<ExpPolySymbol> symbol;
  std::string samples_path;

  double p = 1.0;
  double eps_target = 1e-6;

  std::size_t grid_t_count = 800;
  std::optional<double> grid_t_max;  // empty means "auto"

  double range_epsilon = 0.02;
  std::vector<double> n_schedule = {10.0, 100.0, 1000.0};
  double range_X = 1e4;
  std::size_t range_per_block = 20000;

  std::optional<double> spectrum_t_max;  // empty: 30 / (2 pi min Im z)
  std::size_t spectrum_t_count = 400;

  std::vector<double> vmo_r_levels = {0.9, 0.99, 0.999, 0.9999};
  std::size_t vmo_theta_count = 64;

  std::string out_dir = "out";
  std::set<std::string> formats = {"csv", "svg", "json"};

  std::string source_text;  // raw document, hashed into the report
};

// Unknown keys are rejected; messages name the offending field path.
JobConfig parse_config(const std::string& text);
// Reads the file and resolves a relative samples path against its directory.
JobConfig load_config(const std::string& path);

// boundary samples file: lines "x,re,im" ('#' comments and a header allowed)
SampledBoundarySymbol load_samples(const std::string& path);

// FNV-1a 64-bit of the config text, hex.
std::string config_hash(const std::string& text);

}  // namespace qps::cli
