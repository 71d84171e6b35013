#include "qfp/cli/commands.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

#include "qfp/binomial.hpp"
#include "qfp/codes.hpp"
#include "qfp/leakage.hpp"
#include "qfp/montecarlo.hpp"
#include "qfp/oracle.hpp"

namespace qfp::cli {

namespace {

std::string fmt(double x) {
  if (!std::isfinite(x)) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

struct CurveTask {
  std::int64_t n;
  int k;
  NoiseModel noise;
  ErrorModel model;
  std::string model_label;
};

CurveRow evaluate(const RunConfig& cfg, const CurveTask& task) {
  CurveRow row;
  row.n = task.n;
  row.k = task.k;
  row.family = cfg.family;
  row.error_model = task.model_label;
  row.classical_ref_bits = classical_reference(static_cast<double>(task.n), cfg.classical_c).bits;
  QilRequest req;
  req.family = family_from_string(cfg.family);
  req.k = task.k;
  req.n = task.n;
  req.epsilon = cfg.epsilon;
  req.noise = task.noise;
  req.error_model = task.model;
  if (req.family == Family::qary_ring) req.delta_cap = 1.0 - std::ldexp(1.0, -task.k) - 1e-4;
  try {
    const QilPoint pt = optimize_delta_for_qil(req);
    row.delta_opt = pt.delta;
    row.mu = req.family == Family::interpolation ? std::numeric_limits<double>::quiet_NaN() : pt.mu_launched;
    row.m_k = pt.m_k;
    row.qil_bits = pt.bound.bits;
    row.bound_method = std::string(to_string(pt.bound.method));
  } catch (const InfeasibleError&) {
    row.status = "infeasible";
    row.delta_opt = row.mu = row.qil_bits = std::numeric_limits<double>::quiet_NaN();
  }
  return row;
}

}  // namespace

std::vector<CurveRow> compute_curves(const RunConfig& cfg) {
  validate(cfg);
  family_from_string(cfg.family);
  std::vector<CurveTask> tasks;
  for (std::int64_t n : n_grid(cfg)) {
    for (int k : cfg.ks) {
      const bool lb = cfg.optimal_lb_from_k > 0 && k >= cfg.optimal_lb_from_k;
      tasks.push_back({n, k, cfg.noise, lb ? ErrorModel::optimal_lb : ErrorModel::direct,
                       lb ? "optimal_lb" : "direct"});
    }
    for (const auto& ref : cfg.reference_rows) {
      NoiseModel nm = cfg.noise;
      nm.visibility = ref.visibility;
      tasks.push_back({n, ref.k, nm, ErrorModel::direct, "visibility_" + fmt(ref.visibility)});
    }
  }

  std::vector<CurveRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) rows[i] = evaluate(cfg, tasks[i]);
  };
  const unsigned w = std::min<unsigned>(cfg.resolved_workers(), static_cast<unsigned>(std::max<std::size_t>(1, tasks.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < w; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

void write_curves_csv(const std::vector<CurveRow>& rows, std::ostream& out) {
  out << "n,k,family,delta_opt,mu,m_k,error_model,qil_bits,bound_method,classical_ref_bits,status\n";
  for (const auto& r : rows) {
    const bool ok = r.status == "ok";
    out << r.n << ',' << r.k << ',' << r.family << ',' << fmt(r.delta_opt) << ',' << fmt(r.mu) << ','
        << (ok ? std::to_string(r.m_k) : "") << ',' << r.error_model << ',' << fmt(r.qil_bits) << ','
        << r.bound_method << ',' << fmt(r.classical_ref_bits) << ',' << r.status << '\n';
  }
}

namespace {

std::int64_t resolve_m(const RunConfig& cfg) {
  if (cfg.m > 0) return cfg.m;
  if (cfg.n > 0) return gv_binary_length(cfg.n, cfg.delta);
  throw std::invalid_argument("either m or n must be given");
}

nlohmann::json threshold_json(const ThresholdResult& t) {
  return {{"d_th", t.d_th}, {"worst_case_error", t.worst_case_error}, {"p_D", t.p_D}, {"p_E", t.p_E}};
}

nlohmann::json bound_json(const LeakageBound& b) {
  nlohmann::json j{{"bits", b.bits}, {"method", std::string(to_string(b.method))}};
  for (const auto& [k, v] : b.subterms) j["subterms"][k] = v;
  for (const auto& [k, v] : b.params) j["params"][k] = v;
  if (b.reference_only) j["reference_only"] = true;
  return j;
}

}  // namespace

nlohmann::json cmd_solve(const RunConfig& cfg, std::ostream& text) {
  validate(cfg);
  const Family fam = family_from_string(cfg.family);
  const std::int64_t m = resolve_m(cfg);
  const int k = cfg.k;
  nlohmann::json r{{"family", cfg.family}, {"k", k}, {"m", m}, {"delta", cfg.delta}, {"epsilon", cfg.epsilon},
                   {"noise", to_json(cfg.noise)}};
  if (cfg.n > 0) r["n"] = cfg.n;
  try {
    if (fam == Family::interpolation) {
      const double p_k = static_cast<double>(k) / static_cast<double>(m);
      const std::int64_t reps = solve_repetition(k, m, cfg.delta, p_k, cfg.epsilon);
      r["p_k"] = p_k;
      r["r"] = reps;
      r["predicted_error"] = interp_worst_case_error(k, m, cfg.delta, p_k, reps);
      r["qil"]["schur_horn"] = bound_json(qil_interpolation(k, m, p_k, reps));
      r["status"] = "ok";
      text << "interpolation k=" << k << " m=" << m << " p_k=" << p_k << " r=" << reps
           << " error=" << r["predicted_error"].get<double>() << " qil=" << r["qil"]["schur_horn"]["bits"].get<double>()
           << " bits\n";
      return r;
    }
    if (fam != Family::ring && fam != Family::lattice)
      throw std::invalid_argument("solve supports ring, lattice and interpolation");
    const ErrorProfile profile = fam == Family::ring ? ring_error_profile(k, cfg.delta) : lattice_error_profile(k, cfg.delta);
    AmplitudeOptions opts;
    opts.mu_cap = cfg.mu_cap;
    const AmplitudeSolution sol = solve_amplitude(profile, m, cfg.epsilon, cfg.noise, opts);
    const double signals = static_cast<double>(m) / k;
    r["mu_launched"] = sol.mu_launched;
    r["mu_received"] = sol.mu_received;
    r["beta_sq_launched"] = sol.mu_launched / signals;
    r["beta_sq_received"] = sol.beta_sq_received;
    r["m_k"] = sol.m_k;
    r["predicted_error"] = sol.predicted_error;
    r["threshold"] = sol.used_threshold_model ? threshold_json(sol.threshold)
                                              : nlohmann::json{{"d_th", 1}, {"worst_case_error", sol.predicted_error}};
    if (profile.extrapolated) r["extrapolated"] = true;

    double mu_lo = sol.mu_launched;
    double mu_hi = sol.mu_launched;
    if (fam == Family::lattice) {
      const PhotonRange pr = lattice_photon_range(k, m, sol.mu_launched);
      mu_lo = pr.min;
      mu_hi = pr.max;
      r["mu_range"] = {mu_lo, mu_hi};
    } else {
      r["qil"]["schur_horn"] = bound_json(qil_ring(k, static_cast<double>(m), sol.mu_launched / signals));
    }
    const std::int64_t n_bits = cfg.n > 0 ? cfg.n : m;
    r["qil"]["fannes_audenaert"] = bound_json(fannes_audenaert_optimized(n_bits, 2 * sol.m_k, 2.0 * mu_lo, 2.0 * mu_hi));
    const auto delta_asym = static_cast<std::int64_t>(std::floor(2.0 * mu_hi)) + 1;
    r["qil"]["asymptotic"] = bound_json(asymptotic_bound(2 * sol.m_k, 2.0 * mu_lo, 2.0 * mu_hi, delta_asym));
    r["status"] = "ok";
    text << cfg.family << " k=" << k << " m=" << m << " m_k=" << sol.m_k << " mu(launched)=" << sol.mu_launched
         << " mu(received)=" << sol.mu_received << " d_th=" << r["threshold"]["d_th"].get<std::int64_t>()
         << " error=" << sol.predicted_error << '\n';
    if (r["qil"].contains("schur_horn")) text << "  qil schur_horn " << r["qil"]["schur_horn"]["bits"].get<double>() << " bits\n";
    text << "  qil fannes_audenaert " << r["qil"]["fannes_audenaert"]["bits"].get<double>() << " bits\n";
    return r;
  } catch (const InfeasibleError& e) {
    r["status"] = "infeasible";
    r["reason"] = e.what();
    text << "infeasible: " << e.what() << '\n';
    return r;
  }
}

nlohmann::json cmd_simulate(const RunConfig& cfg, int& exit_code) {
  validate(cfg);
  TrialPlan plan;
  plan.trials = cfg.trials;
  plan.master_seed = cfg.seed;
  plan.noise = cfg.noise;
  plan.workers = cfg.resolved_workers();
  auto& pr = plan.protocol;
  pr.family = family_from_string(cfg.family);
  pr.k = cfg.k;
  pr.m = resolve_m(cfg);
  pr.delta = cfg.delta;

  nlohmann::json r{{"family", cfg.family}, {"k", pr.k}, {"m", pr.m}, {"delta", pr.delta}, {"trials", plan.trials},
                   {"seed", cfg.seed}, {"strategy", cfg.strategy}, {"equal_inputs", cfg.equal_inputs},
                   {"noise", to_json(cfg.noise)}};

  std::optional<GrayMap> geometry;
  if (pr.family == Family::ring) geometry = GrayMap::ring(pr.k);
  if (pr.family == Family::lattice) geometry = GrayMap::lattice(pr.k);
  if (pr.family == Family::interpolation) {
    pr.p_k = static_cast<double>(pr.k) / static_cast<double>(pr.m);
    pr.r = solve_repetition(pr.k, pr.m, pr.delta, pr.p_k, cfg.epsilon);
    r["p_k"] = pr.p_k;
    r["r"] = pr.r;
  } else if (cfg.mu) {
    pr.mu = *cfg.mu;
  } else {
    const ErrorProfile profile = pr.family == Family::lattice ? lattice_error_profile(pr.k, pr.delta) : ring_error_profile(pr.k, pr.delta);
    AmplitudeOptions opts;
    opts.mu_cap = cfg.mu_cap;
    pr.mu = solve_amplitude(profile, pr.m, cfg.epsilon, cfg.noise, opts).mu_launched;
  }
  r["mu"] = pr.mu;

  const PairStrategy strategy = cfg.strategy == "even" ? PairStrategy::even : PairStrategy::consolidated;
  CodewordPair pair = worst_case_pair(static_cast<std::size_t>(pr.m), pr.delta, pr.k, strategy,
                                      geometry ? &*geometry : nullptr);
  plan.x = pair.x;
  plan.y = cfg.equal_inputs ? pair.x : pair.y;

  const EqualityResult res = simulate_equality(plan);
  const std::vector<double> probs = signal_click_probs(plan);
  const ThresholdResult thr = plan_threshold(plan);

  double predicted = 0.0;
  std::string model;
  if (res.inputs_equal) {
    predicted = binomial_upper_tail(res.signals, thr.p_E, thr.d_th);
    model = "binomial";
    if (cfg.noise.p_dark == 0.0 && cfg.noise.visibility == 1.0) {
      predicted = 0.0;
      model = "exact";
    }
  } else if (thr.d_th == 1) {
    double log_nc = 0.0;
    for (double p : probs) log_nc += std::log1p(-p);
    predicted = std::exp(log_nc);
    model = "exact";
  } else {
    predicted = binomial_lower_tail(res.signals, thr.p_D, thr.d_th);
    model = "binomial";
  }
  const double sd = std::sqrt(predicted * (1.0 - predicted) / static_cast<double>(res.trials));
  double z = 0.0;
  if (sd > 0.0)
    z = (res.empirical_error - predicted) / sd;
  else if (res.empirical_error != predicted)
    z = std::numeric_limits<double>::infinity();

  r["signals"] = res.signals;
  r["d_th"] = res.d_th;
  r["errors"] = res.errors;
  r["empirical_error"] = res.empirical_error;
  r["ci95"] = {res.ci.low, res.ci.high};
  r["predicted_error"] = predicted;
  r["prediction_model"] = model;
  r["z"] = std::isfinite(z) ? nlohmann::json(z) : nlohmann::json("inf");
  exit_code = std::abs(z) > 4.0 ? 3 : 0;
  return r;
}

nlohmann::json cmd_usc(const RunConfig& cfg) {
  validate(cfg);
  double p = 0.0;
  nlohmann::json r{{"a", cfg.a}, {"b", cfg.b}};
  if (cfg.beta) {
    const double beta = *cfg.beta;
    const oracle::CoherentQubits q = oracle::qubit_from_coherent(beta, -beta);
    p = q.p;
    r["beta"] = beta;
    const int cutoff = oracle::default_cutoff(2.0 * beta) * 2;
    const auto sa = oracle::coherent_fock(cfg.a ? -beta : beta, cutoff);
    const auto sb = oracle::coherent_fock(cfg.b ? -beta : beta, cutoff);
    const oracle::PortClicks c = oracle::beamsplitter_click_probs(sa, sb);
    r["beamsplitter"] = {{"dark_click", c.dark}, {"light_click", c.light}, {"cutoff", cutoff}};
  } else if (cfg.p) {
    p = *cfg.p;
  } else {
    throw std::invalid_argument("usc needs p or beta");
  }
  const oracle::UscOutcome o = oracle::usc_outcome_probs(cfg.a, cfg.b, p);
  r["p"] = p;
  r["same"] = o.same;
  r["different"] = o.different;
  r["inconclusive"] = o.inconclusive;
  r["qubit_overlap"] = std::abs(1.0 - 2.0 * p);
  return r;
}

namespace {

std::vector<double> random_unit(std::int64_t s, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(s));
  double n2 = 0.0;
  for (auto& x : v) {
    x = g(rng);
    n2 += x * x;
  }
  for (auto& x : v) x /= std::sqrt(n2);
  return v;
}

std::vector<double> normalized(std::vector<double> v) {
  double n2 = 0.0;
  for (double x : v) n2 += x * x;
  if (!(n2 > 0.0)) throw std::invalid_argument("ED vector must be nonzero");
  for (auto& x : v) x /= std::sqrt(n2);
  return v;
}

}  // namespace

nlohmann::json cmd_ed_estimate(const RunConfig& cfg) {
  validate(cfg);
  TrialPlan plan;
  plan.trials = cfg.trials;
  plan.master_seed = cfg.seed;
  plan.noise = cfg.noise;
  plan.workers = cfg.resolved_workers();
  plan.protocol.family = cfg.ed_variant == "real" ? Family::ed_real : Family::ed_complex;
  plan.protocol.alpha = Complex(std::sqrt(cfg.alpha_sq), 0.0);
  std::mt19937_64 rng(cfg.seed);
  if (!cfg.u.empty() || !cfg.v.empty()) {
    if (cfg.u.size() != cfg.v.size()) throw std::invalid_argument("u and v must have equal length");
    plan.u = normalized(cfg.u);
    plan.v = normalized(cfg.v);
  } else {
    plan.u = random_unit(cfg.dimension, rng);
    plan.v = random_unit(cfg.dimension, rng);
  }
  plan.protocol.s = static_cast<std::int64_t>(plan.u.size());
  const EdResult res = simulate_ed(plan);
  double truth = 0.0;
  for (std::size_t j = 0; j < plan.u.size(); ++j) truth += (plan.u[j] - plan.v[j]) * (plan.u[j] - plan.v[j]);
  return {{"variant", cfg.ed_variant},
          {"dimension", plan.u.size()},
          {"alpha_sq", cfg.alpha_sq},
          {"runs", res.runs},
          {"seed", cfg.seed},
          {"estimate", res.mean_estimate},
          {"std_error", res.std_error},
          {"true_sq_distance", truth},
          {"z", res.std_error > 0.0 ? (res.mean_estimate - truth) / res.std_error : 0.0},
          {"noise", to_json(cfg.noise)}};
}

}  // namespace qfp::cli
