#pragma once

// Click-level simulation of protocol runs.

#include <cstdint>
#include <random>
#include <vector>

#include "qfp/analysis.hpp"
#include "qfp/codes.hpp"
#include "qfp/constellations.hpp"

namespace qfp {

struct TrialPlan {
  std::int64_t trials = 1;
  std::uint64_t master_seed = 0;
  ProtocolInstance protocol;
  NoiseModel noise;
  Bits x, y;                  // codeword pair (equality families)
  std::vector<double> u, v;   // unit vectors (ED families)
  unsigned workers = 1;

  void validate() const;
};

/// Independent stream for one trial; a function of (master_seed, trial_index) only.
std::mt19937_64 derive_trial_rng(std::uint64_t master_seed, std::uint64_t trial_index);

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

/// Wilson score interval at z = 1.959964 (95%).
Interval wilson_interval(std::int64_t successes, std::int64_t trials);

struct EqualityResult {
  std::int64_t trials = 0;
  std::int64_t errors = 0;
  double empirical_error = 0.0;
  Interval ci;
  std::int64_t d_th = 1;
  std::int64_t signals = 0;
  bool inputs_equal = false;
};

/// Per-signal click probabilities seen by the referee for plan.x, plan.y.
/// Launched amplitudes carry mean photon number mu and are attenuated by eta.
std::vector<double> signal_click_probs(const TrialPlan& plan);

/// Decision threshold the referee uses: optimal_threshold on the binomial
/// model of the family's worst-case profile at the plan's distance.
ThresholdResult plan_threshold(const TrialPlan& plan);

/// Runs `trials` independent protocol executions; an error is NotEqual on
/// equal inputs or Equal on different inputs.
EqualityResult simulate_equality(const TrialPlan& plan);

struct EdModeStats {
  std::vector<double> dark_mean;   // mean photon number per mode at the dark port
  std::vector<double> light_mean;
  std::vector<double> dark_click;  // click probability per mode
  std::vector<double> light_click;
};

EdModeStats ed_mode_statistics(const TrialPlan& plan);

struct EdResult {
  std::int64_t runs = 0;
  double mean_estimate = 0.0;
  double std_error = 0.0;
  std::vector<double> dark_click_mean;  // empirical clicks per run, per mode
  std::vector<double> light_click_mean;
};

EdResult simulate_ed(const TrialPlan& plan);

}  // namespace qfp
