#include "qfp/leakage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>

#include "qfp/codes.hpp"

namespace qfp {

ProbabilityVector::ProbabilityVector(std::vector<double> entries) : p_(std::move(entries)) {
  if (p_.empty()) throw std::invalid_argument("ProbabilityVector: empty");
  double sum = 0.0;
  for (double x : p_) {
    if (!(x >= 0.0)) throw std::invalid_argument("ProbabilityVector: negative or NaN entry");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("ProbabilityVector: entries do not sum to 1");
}

std::string_view to_string(BoundMethod m) noexcept {
  switch (m) {
    case BoundMethod::schur_horn: return "schur_horn";
    case BoundMethod::fannes_audenaert: return "fannes_audenaert";
    case BoundMethod::asymptotic: return "asymptotic";
    case BoundMethod::classical_ref: return "classical_ref";
  }
  return "unknown";
}

namespace {

double lookup(const std::vector<std::pair<std::string, double>>& v, std::string_view name) {
  for (const auto& [key, value] : v)
    if (key == name) return value;
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

double LeakageBound::subterm(std::string_view name) const { return lookup(subterms, name); }
double LeakageBound::param(std::string_view name) const { return lookup(params, name); }

double shannon_entropy(const ProbabilityVector& lambda) {
  double h = 0.0;
  for (double p : lambda.entries())
    if (p > 0.0) h -= p * std::log2(p);
  return h;
}

ProbabilityVector lambda_interpolation(int k, double p_k) {
  if (k < 1) throw std::invalid_argument("lambda_interpolation: k must be >= 1");
  if (!(p_k >= 0.0 && p_k <= 1.0)) throw std::invalid_argument("lambda_interpolation: p_k must lie in [0, 1]");
  std::vector<double> v(2 * static_cast<std::size_t>(k) + 1, p_k / (2.0 * k));
  v[0] = 1.0 - p_k;
  return ProbabilityVector(std::move(v));
}

LeakageBound qil_interpolation(int k, std::int64_t m, double p_k, std::int64_t r) {
  if (m < 1 || r < 1) throw std::invalid_argument("qil_interpolation: m and r must be >= 1");
  const auto signals = static_cast<double>((m + k - 1) / k);
  if (k < 1) throw std::invalid_argument("qil_interpolation: k must be >= 1");
  if (!(p_k >= 0.0 && p_k <= 1.0)) throw std::invalid_argument("qil_interpolation: p_k must lie in [0, 1]");
  // entropy of lambda_interpolation without materializing its 2k+1 entries
  double h = 0.0;
  if (p_k < 1.0) h -= (1.0 - p_k) * std::log2(1.0 - p_k);
  if (p_k > 0.0) h -= p_k * std::log2(p_k / (2.0 * k));
  const double rr = static_cast<double>(r);
  LeakageBound b;
  b.method = BoundMethod::schur_horn;
  b.bits = 2.0 * signals * rr * h;
  b.subterms = {{"signal_entropy", b.bits}};
  b.params = {{"entropy_per_signal", h},
              {"analytic_cap", 2.0 * rr * (2.0 + (1.0 + static_cast<double>(k) / m) * std::log2(2.0 * m))}};
  return b;
}

ProbabilityVector lambda_ring(int k, double beta_sq) {
  if (k < 1 || k > 16) throw std::invalid_argument("lambda_ring: k must lie in [1, 16]");
  if (!(beta_sq >= 0.0 && std::isfinite(beta_sq))) throw std::invalid_argument("lambda_ring: |beta|^2 must be finite and >= 0");
  const std::size_t n = std::size_t{1} << k;
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
  std::vector<double> radius(n), phase(n);
  for (std::size_t j = 0; j < n; ++j) {
    radius[j] = std::exp(beta_sq * (std::cos(step * j) - 1.0));
    phase[j] = beta_sq * std::sin(step * j);
  }
  std::vector<double> v(n);
  for (std::size_t l = 0; l < n; ++l) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double angle = phase[j] - step * static_cast<double>((l * j) % n);
      s += radius[j] * std::cos(angle);
    }
    v[l] = std::max(0.0, s / static_cast<double>(n));
  }
  return ProbabilityVector(std::move(v));
}

LeakageBound qil_ring(int k, double m, double beta_sq) {
  if (!(m > 0.0)) throw std::invalid_argument("qil_ring: m must be > 0");
  const double h = shannon_entropy(lambda_ring(k, beta_sq));
  LeakageBound b;
  b.method = BoundMethod::schur_horn;
  b.bits = 2.0 * m / k * h;
  b.subterms = {{"signal_entropy", b.bits}};
  b.params = {{"entropy_per_signal", h}};
  return b;
}

namespace {

// log of e^{-mu} (e mu / x)^x, the Chernoff bound at photon number x.
double log_chernoff(double mu, double x) { return -mu + x * (1.0 + std::log(mu) - std::log(x)); }

}  // namespace

double typical_tail(std::int64_t delta, double mu_min, double mu_max) {
  if (delta < 0) throw std::invalid_argument("typical_tail: Delta must be >= 0");
  if (!(mu_min >= 0.0 && mu_min <= mu_max)) throw std::invalid_argument("typical_tail: need 0 <= mu_min <= mu_max");
  const auto d = static_cast<double>(delta);
  double lower = 0.0;
  if (mu_min - d > 0.0)
    lower = std::exp(log_chernoff(mu_min, mu_min - d));
  else if (mu_min - d == 0.0)
    lower = std::exp(-mu_min);
  const double upper = mu_max > 0.0 ? std::exp(log_chernoff(mu_max, mu_max + d)) : 0.0;
  return lower + upper;
}

double typical_log_dim(std::int64_t delta, std::int64_t modes, double mu_min, double mu_max) {
  if (modes < 1) throw std::invalid_argument("typical_log_dim: modes must be >= 1");
  const auto d = static_cast<double>(delta);
  return (mu_max + d) * std::log2(mu_max + d + static_cast<double>(modes) - 1.0) +
         std::log2(mu_max - mu_min + 2.0 * d + 1.0);
}

LeakageBound fannes_audenaert_bound(std::int64_t n, std::int64_t modes, double mu_min, double mu_max,
                                    double eps_prime) {
  if (n < 0) throw std::invalid_argument("fannes_audenaert_bound: n must be >= 0");
  if (!(eps_prime > 0.0 && eps_prime <= 0.5)) throw std::invalid_argument("fannes_audenaert_bound: eps_prime must lie in (0, 1/2]");
  if (!(mu_min >= 0.0 && mu_min <= mu_max)) throw std::invalid_argument("fannes_audenaert_bound: need 0 <= mu_min <= mu_max");

  std::int64_t hi = 1;
  while (typical_tail(hi, mu_min, mu_max) > eps_prime) {
    hi *= 2;
    if (hi > (std::int64_t{1} << 40)) throw InfeasibleError("fannes_audenaert_bound: no Delta reaches the tail target");
  }
  std::int64_t lo = hi / 2 + 1;
  if (hi == 1) lo = 1;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (typical_tail(mid, mu_min, mu_max) <= eps_prime)
      hi = mid;
    else
      lo = mid + 1;
  }
  const std::int64_t delta = lo;
  const double gamma = std::sqrt(2.0 * eps_prime);

  LeakageBound b;
  b.method = BoundMethod::fannes_audenaert;
  const double dim = typical_log_dim(delta, modes, mu_min, mu_max);
  const double cont = 2.0 * static_cast<double>(n) * gamma;
  const double bin = binary_entropy(std::min(1.0, gamma));
  b.bits = dim + cont + bin;
  b.subterms = {{"dimension", dim}, {"continuity", cont}, {"binary", bin}};
  b.params = {{"delta", static_cast<double>(delta)}, {"eps_prime", eps_prime}};
  return b;
}

LeakageBound fannes_audenaert_optimized(std::int64_t n, std::int64_t modes, double mu_min, double mu_max) {
  // minimum lies at the lower end or at a breakpoint eps_prime = tail(Delta)
  const double lo = 1e-12;
  const double hi = std::pow(10.0, -0.5);
  LeakageBound best = fannes_audenaert_bound(n, modes, mu_min, mu_max, lo);
  for (auto delta = static_cast<std::int64_t>(best.param("delta")); delta >= 1; --delta) {
    const double eps = typical_tail(delta, mu_min, mu_max);
    if (eps > hi) break;
    if (eps <= lo) continue;
    LeakageBound b = fannes_audenaert_bound(n, modes, mu_min, mu_max, eps);
    if (b.bits < best.bits) best = std::move(b);
  }
  return best;
}

double poisson_entropy(double mu) {
  if (!(mu >= 0.0)) throw std::invalid_argument("poisson_entropy: mu must be >= 0");
  if (mu == 0.0) return 0.0;
  const double upper = mu + 40.0 * std::sqrt(mu) + 60.0;
  double h = 0.0;
  for (double j = 0.0; j <= upper; j += 1.0) {
    const double lp = -mu + j * std::log(mu) - std::lgamma(j + 1.0);
    const double p = std::exp(lp);
    if (p > 0.0) h -= p * lp;
  }
  return h / std::numbers::ln2;
}

LeakageBound asymptotic_bound(std::int64_t modes, double mu_min, double mu_max, std::int64_t delta, double tol) {
  if (!(mu_min >= 0.0 && mu_min <= mu_max)) throw std::invalid_argument("asymptotic_bound: need 0 <= mu_min <= mu_max");
  if (!(static_cast<double>(delta) > mu_max)) throw std::invalid_argument("asymptotic_bound: requires Delta > mu_max");
  if (!(tol > 0.0)) throw std::invalid_argument("asymptotic_bound: tol must be > 0");
  const auto d = static_cast<double>(delta);
  const auto mk = static_cast<double>(modes);

  const double h_c1 = poisson_entropy(mu_max);
  const double j0 = typical_log_dim(delta, modes, mu_min, mu_max);
  double tail = 0.0;
  std::int64_t j = 0;
  if (mu_max > 0.0) {
    for (j = 1; j < 1'000'000; ++j) {
      const double jd = static_cast<double>(j);
      const double pr = std::min(1.0, std::exp(log_chernoff(mu_max, mu_max + jd * d)));
      const double top = mu_max + (jd + 1.0) * d;
      const double term = pr * (top * std::log2(top + mk - 1.0) + std::log2(d));
      tail += term;
      if (term < tol) break;
    }
  }
  LeakageBound b;
  b.method = BoundMethod::asymptotic;
  b.bits = h_c1 + j0 + tail;
  b.subterms = {{"entropy_c1", h_c1}, {"j0_dimension", j0}, {"tail", tail}};
  b.params = {{"delta", d}, {"truncation_index", static_cast<double>(j)}};
  return b;
}

LeakageBound classical_reference(double n, double c) {
  if (!(n >= 0.0)) throw std::invalid_argument("classical_reference: n must be >= 0");
  if (!(c > 0.0)) throw std::invalid_argument("classical_reference: c must be > 0");
  LeakageBound b;
  b.method = BoundMethod::classical_ref;
  b.bits = c * std::sqrt(n);
  b.subterms = {{"c_sqrt_n", b.bits}};
  b.params = {{"c", c}};
  b.reference_only = true;
  return b;
}

QilPoint qil_at_delta(const QilRequest& req, double delta) {
  QilPoint pt;
  pt.delta = delta;
  const int k = req.k;
  AmplitudeOptions opts;
  opts.error_model = req.error_model;

  switch (req.family) {
    case Family::ring: {
      pt.m = gv_binary_length(req.n, delta);
      pt.m_k = (pt.m + k - 1) / k;
      const AmplitudeSolution sol = solve_amplitude(ring_error_profile(k, delta), pt.m, req.epsilon, req.noise, opts);
      pt.mu_received = sol.mu_received;
      pt.mu_launched = sol.mu_launched;
      const double signals = static_cast<double>(pt.m) / k;
      pt.bound = qil_ring(k, static_cast<double>(pt.m), sol.mu_launched / signals);
      return pt;
    }
    case Family::lattice: {
      pt.m = gv_binary_length(req.n, delta);
      pt.m_k = (pt.m + k - 1) / k;
      const AmplitudeSolution sol = solve_amplitude(lattice_error_profile(k, delta), pt.m, req.epsilon, req.noise, opts);
      pt.mu_received = sol.mu_received;
      pt.mu_launched = sol.mu_launched;
      const PhotonRange range = lattice_photon_range(k, pt.m, sol.mu_launched);
      pt.bound = fannes_audenaert_optimized(req.n, 2 * pt.m_k, 2.0 * range.min, 2.0 * range.max);
      return pt;
    }
    case Family::qary_ring: {
      const int q = 1 << k;
      if (!(delta < 1.0 - 1.0 / q)) throw InfeasibleError("qil_at_delta: delta_q out of range for this alphabet");
      pt.m = gv_qary_length(req.n, delta, q);
      pt.m_k = pt.m;
      ErrorProfile profile;
      profile.k = 1;
      profile.strategy = "qary";
      profile.classes = {{1.0 - delta, 1.0, 1.0}, {delta, 1.0, std::cos(2.0 * std::numbers::pi / q)}};
      const AmplitudeSolution sol = solve_amplitude(profile, pt.m, req.epsilon, req.noise, opts);
      pt.mu_received = sol.mu_received;
      pt.mu_launched = sol.mu_launched;
      pt.bound = qil_ring(k, static_cast<double>(pt.m) * k, sol.mu_launched / static_cast<double>(pt.m));
      return pt;
    }
    case Family::interpolation: {
      if (!req.noise.is_ideal()) throw std::invalid_argument("qil_at_delta: interpolation family is ideal-only");
      pt.m = gv_binary_length(req.n, delta);
      if (k > pt.m) throw InfeasibleError("qil_at_delta: k exceeds codeword length");
      pt.m_k = (pt.m + k - 1) / k;
      const double p_k = static_cast<double>(k) / static_cast<double>(pt.m);
      pt.r = solve_repetition(k, pt.m, delta, p_k, req.epsilon);
      pt.bound = qil_interpolation(k, pt.m, p_k, pt.r);
      return pt;
    }
    default:
      throw std::invalid_argument("qil_at_delta: family has no leakage pipeline");
  }
}

QilPoint optimize_delta_for_qil(const QilRequest& req) {
  if (!(req.epsilon > 0.0 && req.epsilon < 1.0)) throw std::invalid_argument("optimize_delta_for_qil: epsilon must lie in (0, 1)");
  const double limit = req.family == Family::qary_ring ? 1.0 - std::ldexp(1.0, -req.k) : 0.5;
  if (!(req.delta_floor > 0.0 && req.delta_floor < req.delta_cap && req.delta_cap < limit))
    throw std::invalid_argument("optimize_delta_for_qil: need 0 < delta_floor < delta_cap < 1/2 (1 - 1/q for qary_ring)");
  if (req.coarse_points < 3) throw std::invalid_argument("optimize_delta_for_qil: coarse_points must be >= 3");

  const double inf = std::numeric_limits<double>::infinity();
  auto try_at = [&](double d, QilPoint* out) {
    try {
      QilPoint p = qil_at_delta(req, d);
      if (out) *out = p;
      return p.bound.bits;
    } catch (const InfeasibleError&) {
      return inf;
    }
  };

  const int n = req.coarse_points;
  const double ratio = std::log(req.delta_cap / req.delta_floor) / (n - 1);
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) grid[i] = i + 1 == n ? req.delta_cap : req.delta_floor * std::exp(ratio * i);

  int best = -1;
  double best_bits = inf;
  QilPoint best_pt;
  for (int i = 0; i < n; ++i) {
    QilPoint p;
    const double bits = try_at(grid[i], &p);
    if (bits < best_bits) {
      best_bits = bits;
      best = i;
      best_pt = p;
    }
  }
  if (best < 0) throw InfeasibleError("optimize_delta_for_qil: no feasible delta (noise too strong)");

  const double a = grid[std::max(0, best - 1)];
  const double b = grid[std::min(n - 1, best + 1)];
  const int bits_precision = std::max(4, static_cast<int>(std::ceil(-std::log2(req.tol))));
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::brent_find_minima([&](double d) { return try_at(d, nullptr); }, a, b,
                                                       bits_precision, iters);
  QilPoint refined;
  if (try_at(r.first, &refined) < best_bits) return refined;
  return best_pt;
}

}  // namespace qfp
