#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qfp/analysis.hpp"
#include "qfp/constellations.hpp"

namespace qfp::cli {

struct ReferenceRow {
  int k = 1;
  double visibility = 1.0;
};

/// Parameters for every command. Precedence: defaults < preset < config file < flags.
struct RunConfig {
  std::string preset;
  std::uint64_t seed = 1;
  std::string out;

  // curves
  std::string family = "ring";
  std::vector<int> ks{1, 2, 3};
  double n_min = 1e3;
  double n_max = 1e8;
  int points_per_decade = 4;
  double epsilon = 0.01;
  NoiseModel noise{};
  int optimal_lb_from_k = 0;  // 0 disables the optimal-measurement variant
  std::vector<ReferenceRow> reference_rows;
  double classical_c = 1.0;
  double mu_cap = 1e5;
  unsigned workers = 0;  // 0 = hardware concurrency

  // solve / simulate
  int k = 1;
  std::int64_t n = 0;
  std::int64_t m = 0;
  double delta = 0.25;
  std::optional<double> mu;
  std::int64_t trials = 100000;
  std::string strategy = "even";
  bool equal_inputs = false;

  // verify
  std::vector<std::string> suites;

  // usc
  int a = 0;
  int b = 1;
  std::optional<double> p;
  std::optional<double> beta;

  // ed-estimate
  std::string ed_variant = "real";
  std::int64_t dimension = 16;
  double alpha_sq = 0.1;
  std::vector<double> u, v;

  unsigned resolved_workers() const;
};

/// Applies a named preset (fig2, fig3, ideal, paper-exp). Throws on unknown names.
void apply_preset(RunConfig& cfg, const std::string& name);

/// Overlays keys present in `j`; unknown keys are rejected.
void apply_json(RunConfig& cfg, const nlohmann::json& j);

void load_config_file(RunConfig& cfg, const std::string& path);

/// Range checks shared by all commands.
void validate(const RunConfig& cfg);

/// n grid n_min * 10^(i / points_per_decade) rounded, up to n_max. Empty when n_max < n_min.
std::vector<std::int64_t> n_grid(const RunConfig& cfg);

nlohmann::json to_json(const NoiseModel& noise);

}  // namespace qfp::cli
