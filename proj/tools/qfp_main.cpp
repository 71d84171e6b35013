#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qfp/cli/commands.hpp"
#include "qfp/cli/config.hpp"
#include "qfp/cli/verify.hpp"

namespace {

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> family;
  std::vector<int> ks;
  std::optional<double> n_min, n_max, epsilon, mu_cap, eta, p_dark, visibility;
  std::optional<int> points_per_decade, optimal_lb_from_k;
  std::optional<unsigned> workers;
  std::optional<int> k;
  std::optional<std::int64_t> n, m, trials;
  std::optional<double> delta, mu;
  std::optional<std::string> strategy;
  bool equal_inputs = false;
  std::vector<std::string> suites;
  std::optional<int> a, b;
  std::optional<double> p, beta;
  std::optional<std::string> ed_variant;
  std::optional<std::int64_t> dimension;
  std::optional<double> alpha_sq;
};

template <typename T>
void put(const std::optional<T>& src, T& dst) {
  if (src) dst = *src;
}

void apply(const Overrides& o, qfp::cli::RunConfig& cfg) {
  put(o.seed, cfg.seed);
  put(o.out, cfg.out);
  put(o.family, cfg.family);
  if (!o.ks.empty()) cfg.ks = o.ks;
  put(o.n_min, cfg.n_min);
  put(o.n_max, cfg.n_max);
  put(o.epsilon, cfg.epsilon);
  put(o.mu_cap, cfg.mu_cap);
  put(o.eta, cfg.noise.eta);
  put(o.p_dark, cfg.noise.p_dark);
  put(o.visibility, cfg.noise.visibility);
  put(o.points_per_decade, cfg.points_per_decade);
  put(o.optimal_lb_from_k, cfg.optimal_lb_from_k);
  put(o.workers, cfg.workers);
  put(o.k, cfg.k);
  put(o.n, cfg.n);
  put(o.m, cfg.m);
  put(o.trials, cfg.trials);
  put(o.delta, cfg.delta);
  if (o.mu) cfg.mu = o.mu;
  put(o.strategy, cfg.strategy);
  if (o.equal_inputs) cfg.equal_inputs = true;
  if (!o.suites.empty()) cfg.suites = o.suites;
  put(o.a, cfg.a);
  put(o.b, cfg.b);
  if (o.p) cfg.p = o.p;
  if (o.beta) cfg.beta = o.beta;
  put(o.ed_variant, cfg.ed_variant);
  put(o.dimension, cfg.dimension);
  put(o.alpha_sq, cfg.alpha_sq);
}

void emit(const qfp::cli::RunConfig& cfg, const std::string& body) {
  if (cfg.out.empty() || cfg.out == "-") {
    std::cout << body;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw std::runtime_error("cannot write '" + cfg.out + "'");
  f << body;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum fingerprinting: leakage curves, threshold solving, simulation and checks"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, preset;
  Overrides o;
  app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--seed", o.seed, "Master RNG seed");
  app.add_option("--out", o.out, "Output file (stdout when absent)");
  app.add_option("--preset", preset, "fig2, fig3, ideal or paper-exp");
  app.add_option("--eta", o.eta, "Transmissivity");
  app.add_option("--p-dark", o.p_dark, "Dark count probability per mode");
  app.add_option("--visibility", o.visibility, "Interference visibility");
  app.add_option("--epsilon", o.epsilon, "Target worst-case error");
  app.add_option("--family", o.family, "interpolation, ring, lattice, qary_ring");

  auto* curves = app.add_subcommand("curves", "Optimized leakage versus n as CSV");
  curves->add_option("--ks", o.ks, "Block sizes");
  curves->add_option("--n-min", o.n_min);
  curves->add_option("--n-max", o.n_max);
  curves->add_option("--points-per-decade", o.points_per_decade);
  curves->add_option("--optimal-lb-from-k", o.optimal_lb_from_k, "Use the optimal-measurement error model from this k");
  curves->add_option("--mu-cap", o.mu_cap);
  curves->add_option("--workers", o.workers);

  auto* solve = app.add_subcommand("solve", "Solve one instance and report amplitude, threshold and leakage");
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of the worst-case error");
  for (auto* sub : {solve, simulate}) {
    sub->add_option("--k", o.k);
    sub->add_option("--n", o.n, "Input length");
    sub->add_option("--m", o.m, "Codeword length");
    sub->add_option("--delta", o.delta, "Relative code distance");
    sub->add_option("--mu", o.mu, "Launched mean photon number");
  }
  simulate->add_option("--trials", o.trials);
  simulate->add_option("--strategy", o.strategy, "even or consolidated");
  simulate->add_flag("--equal", o.equal_inputs, "Use equal inputs");

  auto* verify = app.add_subcommand("verify", "Run oracle suites");
  verify->add_option("--suite", o.suites, "overlap, usc, interp, projector, gray, qary");

  auto* usc = app.add_subcommand("usc", "Outcome probabilities of the single-qubit comparison");
  usc->add_option("--a", o.a);
  usc->add_option("--b", o.b);
  usc->add_option("--p", o.p, "Qubit parameter");
  usc->add_option("--beta", o.beta, "Coherent amplitude (states +-beta)");

  auto* ed = app.add_subcommand("ed-estimate", "Euclidean distance estimate by simulation");
  ed->add_option("--variant", o.ed_variant, "real or complex");
  ed->add_option("--dimension", o.dimension);
  ed->add_option("--alpha-sq", o.alpha_sq);

  CLI11_PARSE(app, argc, argv);

  try {
    qfp::cli::RunConfig cfg;
    if (!preset.empty()) qfp::cli::apply_preset(cfg, preset);
    if (!config_path.empty()) qfp::cli::load_config_file(cfg, config_path);
    apply(o, cfg);
    qfp::cli::validate(cfg);

    int code = 0;
    if (curves->parsed()) {
      std::ostringstream csv;
      qfp::cli::write_curves_csv(qfp::cli::compute_curves(cfg), csv);
      emit(cfg, csv.str());
    } else if (solve->parsed()) {
      const auto report = qfp::cli::cmd_solve(cfg, std::cerr);
      emit(cfg, report.dump(2) + "\n");
    } else if (simulate->parsed()) {
      const auto report = qfp::cli::cmd_simulate(cfg, code);
      emit(cfg, report.dump(2) + "\n");
    } else if (verify->parsed()) {
      const auto results = qfp::cli::run_verify(cfg.suites, cfg.seed);
      for (const auto& r : results)
        std::cerr << (r.passed ? "PASS " : "FAIL ") << r.name << " cases=" << r.cases << " worst=" << r.worst << "\n";
      const auto report = qfp::cli::to_json(results);
      emit(cfg, report.dump(2) + "\n");
      code = report.at("passed").get<bool>() ? 0 : 1;
    } else if (usc->parsed()) {
      emit(cfg, qfp::cli::cmd_usc(cfg).dump(2) + "\n");
    } else if (ed->parsed()) {
      emit(cfg, qfp::cli::cmd_ed_estimate(cfg).dump(2) + "\n");
    }
    return code;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
