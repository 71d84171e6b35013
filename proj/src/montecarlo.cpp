#include "qfp/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>

namespace qfp {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

bool is_ed(Family f) { return f == Family::ed_real || f == Family::ed_complex; }

// Splits [0, total) into `workers` contiguous chunks and runs fn(begin, end, slot).
template <typename Fn>
void parallel_chunks(std::int64_t total, unsigned workers, Fn fn) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::int64_t>(1, total))));
  if (workers == 1) {
    fn(std::int64_t{0}, total, 0u);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::int64_t begin = total * w / workers;
    const std::int64_t end = total * (w + 1) / workers;
    pool.emplace_back(fn, begin, end, w);
  }
  for (auto& t : pool) t.join();
}

}  // namespace

void TrialPlan::validate() const {
  if (trials < 1) throw std::invalid_argument("TrialPlan: trials must be >= 1");
  noise.validate();
  if (is_ed(protocol.family)) {
    if (u.empty() || u.size() != v.size()) throw std::invalid_argument("TrialPlan: ED vectors must be nonempty and equal length");
    if (!(std::norm(protocol.alpha) > 0.0)) throw std::invalid_argument("TrialPlan: ED amplitude must be nonzero");
    return;
  }
  if (x.empty() || x.size() != y.size()) throw std::invalid_argument("TrialPlan: codewords must be nonempty and equal length");
  if (protocol.k < 1) throw std::invalid_argument("TrialPlan: k must be >= 1");
}

std::mt19937_64 derive_trial_rng(std::uint64_t master_seed, std::uint64_t trial_index) {
  return std::mt19937_64(splitmix64(master_seed ^ splitmix64(trial_index)));
}

Interval wilson_interval(std::int64_t successes, std::int64_t trials) {
  if (trials < 1 || successes < 0 || successes > trials) throw std::invalid_argument("wilson_interval: need 0 <= successes <= trials, trials >= 1");
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double denom = 1.0 + z * z / n;
  const double centre = (p + z * z / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

namespace {

struct SignalAmplitudes {
  Amplitudes a, b;
};

SignalAmplitudes received_amplitudes(const TrialPlan& plan) {
  const auto& pr = plan.protocol;
  SignalAmplitudes s;
  switch (pr.family) {
    case Family::ring:
      s.a = encode_ring(plan.x, pr.k, pr.mu);
      s.b = encode_ring(plan.y, pr.k, pr.mu);
      break;
    case Family::lattice:
      s.a = encode_lattice(plan.x, pr.k, pr.mu);
      s.b = encode_lattice(plan.y, pr.k, pr.mu);
      break;
    case Family::interpolation: {
      if (pr.k != 1) throw std::invalid_argument("simulate: interpolation is coherent-representable only for k = 1");
      if (!(pr.p_k > 0.0 && pr.p_k < 1.0)) throw std::invalid_argument("simulate: interpolation needs 0 < p_k < 1");
      const double beta = std::sqrt(-0.5 * std::log1p(-pr.p_k));
      for (std::int64_t rep = 0; rep < std::max<std::int64_t>(1, pr.r); ++rep)
        for (std::size_t i = 0; i < plan.x.size(); ++i) {
          s.a.emplace_back(plan.x[i] ? -beta : beta, 0.0);
          s.b.emplace_back(plan.y[i] ? -beta : beta, 0.0);
        }
      break;
    }
    default:
      throw std::invalid_argument("simulate: unsupported family " + std::string(to_string(pr.family)));
  }
  const double scale = std::sqrt(plan.noise.eta);
  for (auto& z : s.a) z *= scale;
  for (auto& z : s.b) z *= scale;
  return s;
}

}  // namespace

std::vector<double> signal_click_probs(const TrialPlan& plan) {
  plan.validate();
  const SignalAmplitudes s = received_amplitudes(plan);
  std::vector<double> p(s.a.size());
  for (std::size_t j = 0; j < p.size(); ++j)
    p[j] = 1.0 - no_click_prob(s.a[j], s.b[j], plan.noise.visibility) * (1.0 - plan.noise.p_dark);
  return p;
}

ThresholdResult plan_threshold(const TrialPlan& plan) {
  const auto& pr = plan.protocol;
  const SignalAmplitudes s = received_amplitudes(plan);
  const auto signals = static_cast<std::int64_t>(s.a.size());
  ErrorProfile profile;
  double beta_sq = 0.0;
  if (pr.family == Family::interpolation) {
    profile = ring_error_profile(1, pr.delta);
    beta_sq = std::norm(s.a.front());
  } else {
    profile = pr.family == Family::lattice ? lattice_error_profile(pr.k, pr.delta) : ring_error_profile(pr.k, pr.delta);
    beta_sq = plan.noise.eta * pr.mu / (static_cast<double>(plan.x.size()) / pr.k);
  }
  const ClickProbs c = profile_click_probs(profile, beta_sq, plan.noise);
  return optimal_threshold(signals, c.p_D, c.p_E);
}

EqualityResult simulate_equality(const TrialPlan& plan) {
  plan.validate();
  if (is_ed(plan.protocol.family)) throw std::invalid_argument("simulate_equality: unsupported family for equality");
  const std::vector<double> probs = signal_click_probs(plan);
  const ThresholdResult thr = plan_threshold(plan);

  std::map<double, std::int64_t> groups;
  for (double p : probs) ++groups[p];
  const std::vector<std::pair<double, std::int64_t>> group_list(groups.begin(), groups.end());

  EqualityResult res;
  res.trials = plan.trials;
  res.d_th = thr.d_th;
  res.signals = static_cast<std::int64_t>(probs.size());
  res.inputs_equal = plan.x == plan.y;

  std::vector<std::int64_t> errors(std::max(1u, plan.workers), 0);
  parallel_chunks(plan.trials, plan.workers, [&](std::int64_t begin, std::int64_t end, unsigned slot) {
    std::int64_t local = 0;
    for (std::int64_t t = begin; t < end; ++t) {
      auto rng = derive_trial_rng(plan.master_seed, static_cast<std::uint64_t>(t));
      std::int64_t clicks = 0;
      for (const auto& [p, count] : group_list) {
        if (p <= 0.0) continue;
        std::binomial_distribution<std::int64_t> draw(count, std::min(1.0, p));
        clicks += draw(rng);
      }
      const bool says_not_equal = clicks >= thr.d_th;
      if (says_not_equal == res.inputs_equal) ++local;
    }
    errors[slot] = local;
  });
  for (auto e : errors) res.errors += e;
  res.empirical_error = static_cast<double>(res.errors) / static_cast<double>(res.trials);
  res.ci = wilson_interval(res.errors, res.trials);
  return res;
}

EdModeStats ed_mode_statistics(const TrialPlan& plan) {
  plan.validate();
  if (!is_ed(plan.protocol.family)) throw std::invalid_argument("ed_mode_statistics: ED family required");
  const EdVariant variant = plan.protocol.family == Family::ed_real ? EdVariant::real : EdVariant::complex_packed;
  Amplitudes a = encode_ed(plan.u, plan.protocol.alpha, variant);
  Amplitudes b = encode_ed(plan.v, plan.protocol.alpha, variant);
  const double scale = std::sqrt(plan.noise.eta);
  const double nu = plan.noise.visibility;
  EdModeStats st;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const Complex aj = a[j] * scale;
    const Complex bj = b[j] * scale;
    const double base = 0.5 * (std::norm(aj) + std::norm(bj));
    const double cross = nu * std::real(std::conj(aj) * bj);
    st.dark_mean.push_back(base - cross);
    st.light_mean.push_back(base + cross);
    st.dark_click.push_back(1.0 - std::exp(-(base - cross)) * (1.0 - plan.noise.p_dark));
    st.light_click.push_back(1.0 - std::exp(-(base + cross)) * (1.0 - plan.noise.p_dark));
  }
  return st;
}

EdResult simulate_ed(const TrialPlan& plan) {
  const EdModeStats st = ed_mode_statistics(plan);
  const std::size_t modes = st.dark_click.size();
  const unsigned slots = std::max(1u, plan.workers);

  struct Acc {
    std::vector<std::int64_t> dark, light;
    std::int64_t sum = 0;
    std::int64_t sum_sq = 0;
  };
  std::vector<Acc> acc(slots, Acc{std::vector<std::int64_t>(modes, 0), std::vector<std::int64_t>(modes, 0)});
  parallel_chunks(plan.trials, plan.workers, [&](std::int64_t begin, std::int64_t end, unsigned slot) {
    Acc& a = acc[slot];
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::int64_t t = begin; t < end; ++t) {
      auto rng = derive_trial_rng(plan.master_seed, static_cast<std::uint64_t>(t));
      std::int64_t w = 0;
      for (std::size_t j = 0; j < modes; ++j) {
        if (unit(rng) < st.dark_click[j]) {
          ++a.dark[j];
          --w;
        }
        if (unit(rng) < st.light_click[j]) {
          ++a.light[j];
          ++w;
        }
      }
      a.sum += w;
      a.sum_sq += w * w;
    }
  });

  std::vector<std::int64_t> dark(modes, 0), light(modes, 0);
  std::int64_t sum = 0;
  std::int64_t sum_sq = 0;
  for (const auto& a : acc) {
    for (std::size_t j = 0; j < modes; ++j) {
      dark[j] += a.dark[j];
      light[j] += a.light[j];
    }
    sum += a.sum;
    sum_sq += a.sum_sq;
  }

  EdResult r;
  r.runs = plan.trials;
  const Complex alpha_rx = plan.protocol.alpha * std::sqrt(plan.noise.eta);
  r.mean_estimate = ed_estimate(dark, light, r.runs, alpha_rx);
  const double n = static_cast<double>(r.runs);
  const double mean_w = static_cast<double>(sum) / n;
  const double var_w = r.runs > 1 ? (static_cast<double>(sum_sq) - n * mean_w * mean_w) / (n - 1.0) : 0.0;
  r.std_error = std::sqrt(std::max(0.0, var_w) / n) / std::norm(alpha_rx);
  for (std::size_t j = 0; j < modes; ++j) {
    r.dark_click_mean.push_back(static_cast<double>(dark[j]) / n);
    r.light_click_mean.push_back(static_cast<double>(light[j]) / n);
  }
  return r;
}

}  // namespace qfp
