#include "qfp/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <thread>

namespace qfp::cli {

unsigned RunConfig::resolved_workers() const {
  if (workers > 0) return workers;
  return std::max(1u, std::thread::hardware_concurrency());
}

void apply_preset(RunConfig& cfg, const std::string& name) {
  if (name == "fig2") {
    cfg.family = "ring";
    cfg.ks = {1, 2, 3, 4, 5, 6};
    cfg.epsilon = 0.01;
    cfg.noise = NoiseModel::ideal();
    cfg.optimal_lb_from_k = 4;
    cfg.reference_rows.clear();
  } else if (name == "fig3") {
    cfg.family = "ring";
    cfg.ks = {1, 2, 3};
    cfg.epsilon = 0.01;
    cfg.noise = NoiseModel::lossy_channel();
    cfg.optimal_lb_from_k = 0;
    cfg.reference_rows = {{1, 0.99}};
  } else if (name == "ideal") {
    cfg.noise = NoiseModel::ideal();
  } else if (name == "paper-exp") {
    cfg.noise = NoiseModel::lossy_channel();
  } else {
    throw std::invalid_argument("unknown preset '" + name + "' (expected fig2, fig3, ideal, paper-exp)");
  }
  cfg.preset = name;
}

namespace {

template <typename T>
void take(const nlohmann::json& j, const char* key, T& dst) {
  if (j.contains(key)) dst = j.at(key).get<T>();
}

template <typename T>
void take_opt(const nlohmann::json& j, const char* key, std::optional<T>& dst) {
  if (j.contains(key) && !j.at(key).is_null()) dst = j.at(key).get<T>();
}

}  // namespace

void apply_json(RunConfig& cfg, const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: top level must be a JSON object");
  static const std::vector<std::string> known = {
      "preset", "seed", "out", "family", "ks", "n_min", "n_max", "points_per_decade", "epsilon", "noise",
      "optimal_lb_from_k", "reference_rows", "classical_c", "mu_cap", "workers", "k", "n", "m", "delta", "mu",
      "trials", "strategy", "equal_inputs", "suites", "a", "b", "p", "beta", "ed_variant", "dimension",
      "alpha_sq", "u", "v"};
  for (const auto& [key, _] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw std::invalid_argument("config: unknown key '" + key + "'");

  if (j.contains("preset")) apply_preset(cfg, j.at("preset").get<std::string>());
  take(j, "seed", cfg.seed);
  take(j, "out", cfg.out);
  take(j, "family", cfg.family);
  take(j, "ks", cfg.ks);
  take(j, "n_min", cfg.n_min);
  take(j, "n_max", cfg.n_max);
  take(j, "points_per_decade", cfg.points_per_decade);
  take(j, "epsilon", cfg.epsilon);
  if (j.contains("noise")) {
    const auto& nj = j.at("noise");
    take(nj, "eta", cfg.noise.eta);
    take(nj, "p_dark", cfg.noise.p_dark);
    take(nj, "visibility", cfg.noise.visibility);
  }
  take(j, "optimal_lb_from_k", cfg.optimal_lb_from_k);
  if (j.contains("reference_rows")) {
    cfg.reference_rows.clear();
    for (const auto& r : j.at("reference_rows")) cfg.reference_rows.push_back({r.at("k").get<int>(), r.at("visibility").get<double>()});
  }
  take(j, "classical_c", cfg.classical_c);
  take(j, "mu_cap", cfg.mu_cap);
  take(j, "workers", cfg.workers);
  take(j, "k", cfg.k);
  take(j, "n", cfg.n);
  take(j, "m", cfg.m);
  take(j, "delta", cfg.delta);
  take_opt(j, "mu", cfg.mu);
  take(j, "trials", cfg.trials);
  take(j, "strategy", cfg.strategy);
  take(j, "equal_inputs", cfg.equal_inputs);
  take(j, "suites", cfg.suites);
  take(j, "a", cfg.a);
  take(j, "b", cfg.b);
  take_opt(j, "p", cfg.p);
  take_opt(j, "beta", cfg.beta);
  take(j, "ed_variant", cfg.ed_variant);
  take(j, "dimension", cfg.dimension);
  take(j, "alpha_sq", cfg.alpha_sq);
  take(j, "u", cfg.u);
  take(j, "v", cfg.v);
}

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("config: '" + path + "' is not valid JSON: " + e.what());
  }
  apply_json(cfg, j);
}

void validate(const RunConfig& cfg) {
  cfg.noise.validate();
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  if (!(cfg.n_min >= 1.0)) throw std::invalid_argument("n_min must be >= 1");
  if (cfg.points_per_decade < 1) throw std::invalid_argument("points_per_decade must be >= 1");
  for (int k : cfg.ks)
    if (k < 1 || k > 16) throw std::invalid_argument("ks entries must lie in [1, 16]");
  for (const auto& r : cfg.reference_rows)
    if (r.k < 1 || !(r.visibility >= 0.0 && r.visibility <= 1.0))
      throw std::invalid_argument("reference_rows need k >= 1 and visibility in [0, 1]");
  if (!(cfg.classical_c > 0.0)) throw std::invalid_argument("classical_c must be > 0");
  if (!(cfg.mu_cap > 0.0)) throw std::invalid_argument("mu_cap must be > 0");
  if (cfg.k < 1) throw std::invalid_argument("k must be >= 1");
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (cfg.strategy != "even" && cfg.strategy != "consolidated")
    throw std::invalid_argument("strategy must be 'even' or 'consolidated'");
  if (cfg.a < 0 || cfg.a > 1 || cfg.b < 0 || cfg.b > 1) throw std::invalid_argument("a and b must be bits");
  if (cfg.ed_variant != "real" && cfg.ed_variant != "complex")
    throw std::invalid_argument("ed_variant must be 'real' or 'complex'");
  if (cfg.dimension < 1) throw std::invalid_argument("dimension must be >= 1");
  if (!(cfg.alpha_sq > 0.0)) throw std::invalid_argument("alpha_sq must be > 0");
}

std::vector<std::int64_t> n_grid(const RunConfig& cfg) {
  std::vector<std::int64_t> out;
  if (cfg.n_max < cfg.n_min) return out;
  for (int i = 0;; ++i) {
    const double n = cfg.n_min * std::pow(10.0, static_cast<double>(i) / cfg.points_per_decade);
    if (n > cfg.n_max * (1.0 + 1e-9)) break;
    const auto v = static_cast<std::int64_t>(std::llround(n));
    if (out.empty() || out.back() != v) out.push_back(v);
  }
  return out;
}

nlohmann::json to_json(const NoiseModel& noise) {
  return {{"eta", noise.eta}, {"p_dark", noise.p_dark}, {"visibility", noise.visibility}};
}

}  // namespace qfp::cli
