#include "qfp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include <boost/math/tools/roots.hpp>

#include "qfp/binomial.hpp"

namespace qfp {

void NoiseModel::validate() const {
  if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("NoiseModel: eta must lie in (0, 1]");
  if (!(p_dark >= 0.0 && p_dark < 1.0)) throw std::invalid_argument("NoiseModel: p_dark must lie in [0, 1)");
  if (!(visibility >= 0.0 && visibility <= 1.0))
    throw std::invalid_argument("NoiseModel: visibility must lie in [0, 1]");
}

double no_click_prob(Complex beta_a, Complex beta_b, double visibility) {
  if (!(visibility >= 0.0 && visibility <= 1.0))
    throw std::invalid_argument("no_click_prob: visibility must lie in [0, 1]");
  const double mu_dark =
      0.5 * (std::norm(beta_a) + std::norm(beta_b) - 2.0 * visibility * std::real(std::conj(beta_a) * beta_b));
  return std::exp(-std::max(0.0, mu_dark));
}

double interp_nd_prob(double d, int k, double p_k) {
  if (k < 1) throw std::invalid_argument("interp_nd_prob: k must be >= 1");
  if (!(d >= 0.0 && d <= k)) throw std::invalid_argument("interp_nd_prob: d must lie in [0, k]");
  if (!(p_k >= 0.0 && p_k <= 1.0)) throw std::invalid_argument("interp_nd_prob: p_k must lie in [0, 1]");
  return 1.0 - (d / k) * p_k * (1.0 - (d - 1.0) * p_k / (2.0 * k));
}

double interp_worst_case_error(int k, std::int64_t m, double delta, double p_k, std::int64_t r) {
  if (m < 1) throw std::invalid_argument("interp_worst_case_error: m must be >= 1");
  if (r < 1) throw std::invalid_argument("interp_worst_case_error: r must be >= 1");
  if (!(delta >= 0.0 && delta <= 1.0)) throw std::invalid_argument("interp_worst_case_error: delta must lie in [0, 1]");
  const double diffs = static_cast<double>(m) * delta;
  const double full = std::floor(diffs / k);
  const double rest = std::max(0.0, diffs - k * full);
  const double rr = static_cast<double>(r);
  return std::pow(interp_nd_prob(k, k, p_k), full * rr) * std::pow(interp_nd_prob(std::min<double>(rest, k), k, p_k), rr);
}

std::int64_t solve_repetition(int k, std::int64_t m, double delta, double p_k, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("solve_repetition: epsilon must lie in (0, 1)");
  const double factor = interp_worst_case_error(k, m, delta, p_k, 1);
  if (factor >= 1.0) throw InfeasibleError("solve_repetition: per-copy error factor is 1 (p_k = 0 or delta = 0)");
  if (factor <= epsilon) return 1;
  const double guess = std::ceil(std::log(epsilon) / std::log(factor));
  if (guess > 9e15) throw InfeasibleError("solve_repetition: repetition count overflows");
  auto r = std::max<std::int64_t>(1, static_cast<std::int64_t>(guess));
  while (r > 1 && interp_worst_case_error(k, m, delta, p_k, r - 1) <= epsilon) --r;
  while (interp_worst_case_error(k, m, delta, p_k, r) > epsilon) ++r;
  return r;
}

double ring_error_exponent(int k, double delta) {
  if (k < 1 || k > 30) throw std::invalid_argument("ring_error_exponent: k must lie in [1, 30]");
  if (!(delta >= 0.0)) throw std::invalid_argument("ring_error_exponent: delta must be >= 0");
  const double kd = k * delta;
  const double fl = std::floor(kd);
  const double f = kd - fl;
  const double n = std::ldexp(1.0, k);
  const double two_pi = 2.0 * std::numbers::pi;
  return 1.0 - (1.0 - f) * std::cos(two_pi * fl / n) - f * std::cos(two_pi * (fl + 1.0) / n);
}

double ring_worst_case_error(int k, double mu, double delta) {
  if (!(mu >= 0.0)) throw std::invalid_argument("ring_worst_case_error: mu must be >= 0");
  return std::exp(-mu * ring_error_exponent(k, delta));
}

double pair_step_no_click(int k, double beta_sq, int d_steps) {
  if (k < 1 || k > 30) throw std::invalid_argument("pair_step_no_click: k must lie in [1, 30]");
  if (d_steps < 0 || static_cast<double>(d_steps) > std::ldexp(1.0, k - 1))
    throw std::invalid_argument("pair_step_no_click: d_steps must lie in [0, 2^(k-1)]");
  const double theta = 2.0 * std::numbers::pi * d_steps / std::ldexp(1.0, k);
  return std::exp(-beta_sq * (1.0 - std::cos(theta)));
}

double ErrorProfile::exponent(double visibility) const {
  double s = 0.0;
  for (const auto& c : classes) s += c.fraction * c.exponent(visibility);
  return s;
}

ErrorProfile ring_error_profile(int k, double delta) {
  if (k < 1 || k > 30) throw std::invalid_argument("ring_error_profile: k must lie in [1, 30]");
  if (!(delta >= 0.0)) throw std::invalid_argument("ring_error_profile: delta must be >= 0");
  const double kd = k * delta;
  const double fl = std::floor(kd);
  const double f = kd - fl;
  const double n = std::ldexp(1.0, k);
  const double two_pi = 2.0 * std::numbers::pi;
  ErrorProfile p;
  p.k = k;
  p.geometry = Geometry::ring;
  p.classes.push_back({1.0 - f, 1.0, std::cos(two_pi * fl / n)});
  if (f > 0.0) p.classes.push_back({f, 1.0, std::cos(two_pi * (fl + 1.0) / n)});
  return p;
}

namespace {

// Class for a block pair with c differing bits, in units of the mean point norm.
SignalClass lattice_class(const GrayMap& map, int c, double fraction) {
  const double r = map.rows();
  const double cc = map.cols();
  const double unit = ((r * r - 1.0) + (cc * cc - 1.0)) / 12.0;
  if (c == 0) return {fraction, 1.0, 1.0};
  const LabelPair lp = closest_label_pair(map, c);
  const Complex a = map.unit_point(lp.a);
  const Complex b = map.unit_point(lp.b);
  return {fraction, 0.5 * (std::norm(a) + std::norm(b)) / unit, std::real(std::conj(a) * b) / unit};
}

}  // namespace

ErrorProfile lattice_error_profile(int k, double delta) {
  if (k < 2 || k > 10) throw std::invalid_argument("lattice_error_profile: k must lie in [2, 10]");
  if (!(delta >= 0.0 && delta * k <= k)) throw std::invalid_argument("lattice_error_profile: delta must lie in [0, 1]");
  const GrayMap map = GrayMap::lattice(k);
  const double kd = k * delta;
  const int fl = static_cast<int>(std::floor(kd));
  const double f = kd - fl;

  ErrorProfile even;
  even.k = k;
  even.geometry = Geometry::lattice;
  even.extrapolated = true;
  even.strategy = "even";
  even.classes.push_back(lattice_class(map, fl, 1.0 - f));
  if (f > 0.0) even.classes.push_back(lattice_class(map, fl + 1, f));

  ErrorProfile packed = even;
  packed.strategy = "consolidated";
  packed.classes.clear();
  packed.classes.push_back(lattice_class(map, 0, 1.0 - delta));
  if (delta > 0.0) packed.classes.push_back(lattice_class(map, k, delta));

  return packed.exponent() < even.exponent() ? packed : even;
}

std::string_view to_string(ErrorModel e) noexcept {
  return e == ErrorModel::direct ? "direct" : "optimal_lb";
}

ThresholdResult optimal_threshold(std::int64_t m_k, double p_D, double p_E) {
  if (m_k < 1) throw std::invalid_argument("optimal_threshold: m_k must be >= 1");
  if (!(p_E >= 0.0 && p_D <= 1.0 && p_E <= p_D))
    throw std::invalid_argument("optimal_threshold: need 0 <= p_E <= p_D <= 1");
  auto false_alarm = [&](std::int64_t t) { return binomial_upper_tail(m_k, p_E, t); };
  auto miss = [&](std::int64_t t) { return binomial_lower_tail(m_k, p_D, t); };

  std::int64_t lo = 0;
  std::int64_t hi = m_k + 1;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (miss(mid) >= false_alarm(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  ThresholdResult best{lo, std::max(false_alarm(lo), miss(lo)), p_D, p_E};
  if (lo > 0) {
    const double e = std::max(false_alarm(lo - 1), miss(lo - 1));
    if (e < best.worst_case_error) best = {lo - 1, e, p_D, p_E};
  }
  return best;
}

ClickProbs experimental_click_probs(int k, double beta_sq, double delta, double p_dark) {
  if (!(beta_sq >= 0.0)) throw std::invalid_argument("experimental_click_probs: |beta|^2 must be >= 0");
  if (!(p_dark >= 0.0 && p_dark < 1.0)) throw std::invalid_argument("experimental_click_probs: p_dark must lie in [0, 1)");
  const double kd = k * delta;
  const double fl = std::floor(kd);
  const double f = kd - fl;
  const double n = std::ldexp(1.0, k);
  const double two_pi = 2.0 * std::numbers::pi;
  auto click = [&](double steps) { return -std::expm1(-beta_sq * (1.0 - std::cos(two_pi * steps / n))); };
  return {(1.0 - f) * click(fl) + f * click(fl + 1.0) + p_dark, p_dark};
}

ClickProbs profile_click_probs(const ErrorProfile& profile, double beta_sq, const NoiseModel& noise) {
  if (!(beta_sq >= 0.0)) throw std::invalid_argument("profile_click_probs: |beta|^2 must be >= 0");
  noise.validate();
  double p_D = noise.p_dark;
  for (const auto& c : profile.classes) p_D += c.fraction * -std::expm1(-beta_sq * std::max(0.0, c.exponent(noise.visibility)));
  const double p_E = noise.p_dark - std::expm1(-(1.0 - noise.visibility) * beta_sq);
  return {std::min(1.0, p_D), std::min(1.0, p_E)};
}

double optimal_measurement_error_lb(double overlap) {
  if (!(overlap >= 0.0 && overlap <= 1.0)) throw std::invalid_argument("optimal_measurement_error_lb: overlap must lie in [0, 1]");
  const double c2 = overlap * overlap;
  return 2.0 * c2 / (1.0 + c2);
}

double overlap_for_optimal_lb(double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw std::invalid_argument("overlap_for_optimal_lb: epsilon must lie in [0, 1]");
  return std::sqrt(epsilon / (2.0 - epsilon));
}

AmplitudeSolution solve_amplitude(const ErrorProfile& profile, std::int64_t m, double epsilon,
                                  const NoiseModel& noise, const AmplitudeOptions& options) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::invalid_argument("solve_amplitude: epsilon must lie in (0, 1]");
  if (m < 1) throw std::invalid_argument("solve_amplitude: m must be >= 1");
  noise.validate();
  const int k = profile.k;
  const double signals = static_cast<double>(m) / k;

  AmplitudeSolution sol;
  sol.m_k = (m + k - 1) / k;
  sol.target_error = epsilon;
  if (options.error_model == ErrorModel::optimal_lb) {
    if (!noise.is_ideal())
      throw std::invalid_argument("solve_amplitude: the optimal_lb error model applies to the ideal setting only");
    sol.target_error = overlap_for_optimal_lb(epsilon);
  }
  auto finish = [&](double mu) {
    sol.mu_received = mu;
    sol.mu_launched = mu / noise.eta;
    sol.beta_sq_received = mu / signals;
    return sol;
  };

  if (noise.is_ideal()) {
    sol.predicted_error = sol.target_error;
    if (epsilon == 1.0) return finish(0.0);
    const double g = profile.exponent();
    if (!(g > 0.0)) throw InfeasibleError("solve_amplitude: delta = 0 gives no distinguishing signal");
    const double mu = std::log(1.0 / sol.target_error) / g;
    if (mu > options.mu_cap) throw InfeasibleError("solve_amplitude: required mu exceeds mu_cap");
    return finish(mu);
  }

  sol.used_threshold_model = true;
  auto evaluate = [&](double mu) {
    const ClickProbs p = profile_click_probs(profile, mu / signals, noise);
    return optimal_threshold(sol.m_k, p.p_D, p.p_E);
  };
  auto gap = [&](double mu) { return evaluate(mu).worst_case_error - sol.target_error; };

  if (gap(0.0) <= 0.0) {
    sol.threshold = evaluate(0.0);
    sol.predicted_error = sol.threshold.worst_case_error;
    return finish(0.0);
  }
  double lo = 0.0;
  double hi = 1.0;
  while (gap(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > options.mu_cap)
      throw InfeasibleError("solve_amplitude: epsilon unreachable below mu_cap (dark counts or visibility floor)");
  }
  std::uintmax_t iters = 200;
  const auto bracket =
      boost::math::tools::toms748_solve(gap, lo, hi, boost::math::tools::eps_tolerance<double>(40), iters);
  const double mu = bracket.second;
  sol.threshold = evaluate(mu);
  sol.predicted_error = sol.threshold.worst_case_error;
  return finish(mu);
}

AmplitudeSolution solve_amplitude(int k, std::int64_t m, double delta, double epsilon, const NoiseModel& noise,
                                  const AmplitudeOptions& options) {
  return solve_amplitude(ring_error_profile(k, delta), m, epsilon, noise, options);
}

double qary_ring_error(int q, double mu, double delta_q) {
  if (q < 2) throw std::invalid_argument("qary_ring_error: q must be >= 2");
  if (!(delta_q >= 0.0 && delta_q < 1.0 - 1.0 / q))
    throw std::invalid_argument("qary_ring_error: delta_q must satisfy 0 <= delta_q < 1 - 1/q");
  if (!(mu >= 0.0)) throw std::invalid_argument("qary_ring_error: mu must be >= 0");
  return std::exp(-mu * delta_q * (1.0 - std::cos(2.0 * std::numbers::pi / q)));
}

GrayVsQary gray_beats_qary(int k, double delta) {
  if (k < 1 || k > 30) throw std::invalid_argument("gray_beats_qary: k must lie in [1, 30]");
  const double cap = (1.0 - std::ldexp(1.0, -k)) / k;
  if (!(delta >= 0.0 && delta <= cap * (1.0 + 1e-12)))
    throw std::invalid_argument("gray_beats_qary: delta must lie in [0, (1 - 2^-k)/k]");
  const double d = std::max(std::min(delta, cap), 1e-12);
  const double kd = std::min(1.0, k * d);
  GrayVsQary r;
  r.lhs = binary_entropy(d) / d - binary_entropy(kd) / kd;
  r.rhs = std::log2(std::ldexp(1.0, k) - 1.0);
  r.slack = r.rhs - r.lhs;
  r.holds = r.slack >= 0.0;
  return r;
}

double ed_estimate(std::span<const std::int64_t> clicks_dark, std::span<const std::int64_t> clicks_light,
                   std::int64_t runs, Complex alpha) {
  if (clicks_dark.size() != clicks_light.size()) throw std::invalid_argument("ed_estimate: mode count mismatch");
  if (runs < 1) throw std::invalid_argument("ed_estimate: runs must be >= 1");
  const double a2 = std::norm(alpha);
  if (!(a2 > 0.0)) throw std::invalid_argument("ed_estimate: |alpha| must be > 0");
  double diff = 0.0;
  for (std::size_t j = 0; j < clicks_dark.size(); ++j)
    diff += static_cast<double>(clicks_light[j]) - static_cast<double>(clicks_dark[j]);
  return 2.0 - diff / (static_cast<double>(runs) * a2);
}

std::int64_t ed_repetition_plan(double epsilon_add, double delta_fail) {
  if (!(epsilon_add > 0.0 && epsilon_add < 1.0)) throw std::invalid_argument("ed_repetition_plan: epsilon must lie in (0, 1)");
  if (!(delta_fail > 0.0 && delta_fail <= 1.0)) throw std::invalid_argument("ed_repetition_plan: delta must lie in (0, 1]");
  const double runs = std::ceil(2.0 * std::log(2.0 / delta_fail) / (epsilon_add * epsilon_add));
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(runs));
}

}  // namespace qfp
