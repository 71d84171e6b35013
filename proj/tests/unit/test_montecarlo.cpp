#include <doctest.h>

#include <cmath>

#include "qfp/montecarlo.hpp"

using namespace qfp;

namespace {

TrialPlan ring_plan(int k, std::int64_t m, double delta, double mu) {
  TrialPlan plan;
  plan.trials = 20000;
  plan.master_seed = 99;
  plan.protocol.family = Family::ring;
  plan.protocol.k = k;
  plan.protocol.m = m;
  plan.protocol.delta = delta;
  plan.protocol.mu = mu;
  const GrayMap g = GrayMap::ring(k);
  const auto pair = worst_case_pair(static_cast<std::size_t>(m), delta, k, PairStrategy::even, &g);
  plan.x = pair.x;
  plan.y = pair.y;
  return plan;
}

}  // namespace

TEST_SUITE("montecarlo") {
  TEST_CASE("trial streams depend only on seed and index") {
    auto a = derive_trial_rng(7, 3), b = derive_trial_rng(7, 3), c = derive_trial_rng(7, 4), d = derive_trial_rng(8, 3);
    const auto va = a();
    CHECK(va == b());
    CHECK(va != c());
    CHECK(va != d());
  }

  TEST_CASE("Wilson interval") {
    const Interval i = wilson_interval(50, 100);
    const double z = 1.959964;
    const double half = z * std::sqrt(0.25 / 100 + z * z / 40000) / (1 + z * z / 100);
    CHECK(i.low == doctest::Approx(0.5 - half));
    CHECK(i.high == doctest::Approx(0.5 + half));
    CHECK(wilson_interval(0, 10).low == 0.0);
  }

  TEST_CASE("click probabilities follow the encoded amplitudes") {
    TrialPlan plan = ring_plan(2, 40, 0.25, 4.0);
    plan.noise = NoiseModel{0.5, 0.01, 1.0};
    const Amplitudes a = encode_ring(plan.x, 2, 4.0), b = encode_ring(plan.y, 2, 4.0);
    const auto probs = signal_click_probs(plan);
    REQUIRE(probs.size() == a.size());
    for (std::size_t j = 0; j < a.size(); ++j)
      CHECK(probs[j] == doctest::Approx(1.0 - std::exp(-0.25 * std::norm(a[j] - b[j])) * 0.99));
  }

  TEST_CASE("equal inputs never err without noise") {
    TrialPlan plan = ring_plan(3, 300, 0.3, 5.0);
    plan.y = plan.x;
    const auto r = simulate_equality(plan);
    CHECK(r.inputs_equal);
    CHECK(r.errors == 0);
  }

  TEST_CASE("results are independent of the worker count") {
    TrialPlan plan = ring_plan(2, 200, 0.3, 3.0);
    plan.workers = 1;
    const auto one = simulate_equality(plan);
    plan.workers = 4;
    const auto four = simulate_equality(plan);
    CHECK(one.errors == four.errors);
    CHECK(one.errors > 0);
  }

  TEST_CASE("ED mode statistics and simulation") {
    TrialPlan plan;
    plan.trials = 50000;
    plan.master_seed = 3;
    plan.protocol.family = Family::ed_real;
    plan.protocol.s = 2;
    plan.protocol.alpha = 0.5;
    plan.u = {1.0, 0.0};
    plan.v = {0.0, 1.0};
    const auto st = ed_mode_statistics(plan);
    CHECK(st.dark_mean[0] == doctest::Approx(0.125));
    CHECK(st.light_mean[0] == doctest::Approx(0.125));
    const auto r = simulate_ed(plan);
    CHECK(std::abs(r.mean_estimate - 2.0) < 4 * r.std_error);
    plan.workers = 3;
    CHECK(simulate_ed(plan).mean_estimate == r.mean_estimate);
  }

  TEST_CASE("plan validation") {
    TrialPlan plan = ring_plan(2, 40, 0.25, 4.0);
    plan.y.pop_back();
    CHECK_THROWS(simulate_equality(plan));
  }
}
