#pragma once

// Closed-form error probabilities, parameter solvers, the binomial click
// model and the Euclidean-distance estimator.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qfp/codes.hpp"
#include "qfp/constellations.hpp"

namespace qfp {

/// Raised when a requested error probability cannot be reached.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NoiseModel {
  double eta = 1.0;         // transmittivity
  double p_dark = 0.0;      // dark-count probability per signal
  double visibility = 1.0;  // interferometric visibility

  static NoiseModel ideal() { return {}; }
  static NoiseModel lossy_channel() { return {0.3, 7.3e-11, 1.0}; }

  bool is_ideal() const noexcept { return eta == 1.0 && p_dark == 0.0 && visibility == 1.0; }
  void validate() const;
};

/// exp(-mu_dark), mu_dark = (|a|^2 + |b|^2 - 2 nu Re(conj(a) b)) / 2.
double no_click_prob(Complex beta_a, Complex beta_b, double visibility = 1.0);

// ---- interpolation family ----

/// 1 - (d/k) p (1 - (d-1) p / (2k)); d may be fractional.
double interp_nd_prob(double d, int k, double p_k);

double interp_worst_case_error(int k, std::int64_t m, double delta, double p_k, std::int64_t r);

/// Smallest r with interp_worst_case_error <= epsilon.
std::int64_t solve_repetition(int k, std::int64_t m, double delta, double p_k, double epsilon);

// ---- ring family ----

/// 1 - (1-f) cos(2 pi floor(k delta) / 2^k) - f cos(2 pi (floor(k delta)+1) / 2^k).
double ring_error_exponent(int k, double delta);

/// exp(-mu * ring_error_exponent(k, delta)). Equality for delta <= 3/k.
double ring_worst_case_error(int k, double mu, double delta);

/// exp(-|beta|^2 (1 - cos(2 pi d / 2^k))).
double pair_step_no_click(int k, double beta_sq, int d_steps);

/// Fraction of signals in one class of a worst-case pair and their
/// per-signal dark-port mean photon number in units of |beta_k|^2:
/// mu_dark / |beta_k|^2 = half_norm_sum - nu * cross.
struct SignalClass {
  double fraction = 0.0;
  double half_norm_sum = 0.0;
  double cross = 0.0;

  double exponent(double visibility = 1.0) const { return half_norm_sum - visibility * cross; }
};

struct ErrorProfile {
  int k = 1;
  Geometry geometry = Geometry::ring;
  std::vector<SignalClass> classes;
  bool extrapolated = false;     // lattice results have no closed form
  std::string strategy = "even";  // adversarial strategy that produced it

  /// sum fraction * exponent; the ideal error is exp(-mu * this).
  double exponent(double visibility = 1.0) const;
};

/// Two classes with floor(k delta) and floor(k delta)+1 ring steps.
ErrorProfile ring_error_profile(int k, double delta);

/// Worst of the even and consolidated adversarial placements on the Gray
/// lattice, each block taking the closest label pair at its Hamming distance.
ErrorProfile lattice_error_profile(int k, double delta);

enum class ErrorModel { direct, optimal_lb };

std::string_view to_string(ErrorModel e) noexcept;

struct ThresholdResult {
  std::int64_t d_th = 0;
  double worst_case_error = 1.0;
  double p_D = 0.0;
  double p_E = 0.0;
};

/// Minimizes max(Pr(Bin(m_k,p_E) >= t), Pr(Bin(m_k,p_D) < t)) over integers t in [0, m_k+1].
ThresholdResult optimal_threshold(std::int64_t m_k, double p_D, double p_E);

struct ClickProbs {
  double p_D = 0.0;
  double p_E = 0.0;
};

/// Per-signal click probabilities of the binomial model at received |beta_k|^2.
ClickProbs experimental_click_probs(int k, double beta_sq, double delta, double p_dark);

/// Same model for any error profile; visibility < 1 adds an interference
/// floor 1 - exp(-(1-nu)|beta|^2) to p_E and shrinks the cross terms in p_D.
ClickProbs profile_click_probs(const ErrorProfile& profile, double beta_sq, const NoiseModel& noise);

struct AmplitudeOptions {
  ErrorModel error_model = ErrorModel::direct;
  double mu_cap = 1e5;  // on received mu
};

struct AmplitudeSolution {
  double mu_received = 0.0;  // total mean photon number reaching the referee
  double mu_launched = 0.0;  // mu_received / eta
  double beta_sq_received = 0.0;
  std::int64_t m_k = 0;
  double target_error = 0.0;  // error the measurement itself must reach
  double predicted_error = 0.0;
  ThresholdResult threshold;
  bool used_threshold_model = false;
};

/// Amplitude reaching worst-case error epsilon. With ideal noise the inversion
/// is closed form; otherwise the optimal-threshold binomial model is root-found.
/// Throws InfeasibleError when the cap is hit.
AmplitudeSolution solve_amplitude(const ErrorProfile& profile, std::int64_t m, double epsilon,
                                  const NoiseModel& noise, const AmplitudeOptions& options = {});

AmplitudeSolution solve_amplitude(int k, std::int64_t m, double delta, double epsilon, const NoiseModel& noise,
                                  const AmplitudeOptions& options = {});

/// 2c^2 / (1 + c^2) for overlap c.
double optimal_measurement_error_lb(double overlap);

/// Overlap c at which optimal_measurement_error_lb(c) = epsilon.
double overlap_for_optimal_lb(double epsilon);

// ---- q-ary comparison ----

double qary_ring_error(int q, double mu, double delta_q);

struct GrayVsQary {
  bool holds = false;
  double lhs = 0.0;    // h(d)/d - h(kd)/(kd)
  double rhs = 0.0;    // log2(2^k - 1)
  double slack = 0.0;  // rhs - lhs
};

GrayVsQary gray_beats_qary(int k, double delta);

// ---- Euclidean distance ----

/// 2 - (N_light - N_dark) / (runs |alpha|^2), with N summed over modes.
double ed_estimate(std::span<const std::int64_t> clicks_dark, std::span<const std::int64_t> clicks_light,
                   std::int64_t runs, Complex alpha);

/// max(1, ceil(2 ln(2/delta_fail) / eps^2)).
std::int64_t ed_repetition_plan(double epsilon_add, double delta_fail);

}  // namespace qfp
