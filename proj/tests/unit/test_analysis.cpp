#include <doctest.h>

#include <cmath>

#include "qfp/analysis.hpp"
#include "qfp/binomial.hpp"
#include "qfp/codes.hpp"
#include "qfp/constellations.hpp"

using namespace qfp;

TEST_SUITE("analysis") {
  TEST_CASE("no-click probability of the dark port") {
    const Complex a(0.7, -0.2), b(-0.1, 0.4);
    CHECK(no_click_prob(a, b) == doctest::Approx(std::exp(-0.5 * std::norm(a - b))));
    CHECK(no_click_prob(a, a) == doctest::Approx(1.0));
    CHECK(no_click_prob(a, a, 0.9) < 1.0);
  }

  TEST_CASE("interpolation no-detection probability") {
    CHECK(interp_nd_prob(0, 4, 0.5) == 1.0);
    for (int k : {1, 2, 5})
      for (double p : {0.1, 0.6, 1.0}) CHECK(interp_nd_prob(k, k, p) == doctest::Approx(1.0 - p * (1.0 - (k - 1) * p / (2.0 * k))));
  }

  TEST_CASE("repetition count is minimal") {
    for (int k : {1, 3, 8})
      for (double delta : {0.1, 0.3}) {
        const std::int64_t m = 40 * k;
        const double p = static_cast<double>(k) / m;
        const std::int64_t r = solve_repetition(k, m, delta, p, 0.01);
        CHECK(interp_worst_case_error(k, m, delta, p, r) <= 0.01);
        if (r > 1) CHECK(interp_worst_case_error(k, m, delta, p, r - 1) > 0.01);
      }
    CHECK_THROWS_AS(solve_repetition(2, 10, 0.0, 0.5, 0.01), InfeasibleError);
  }

  TEST_CASE("ring error equals the product over encoded worst-case signals") {
    struct Case {
      int k;
      std::size_t m;
      double delta;
    };
    for (const Case c : {Case{1, 200, 0.3}, Case{2, 200, 0.25}, Case{3, 300, 0.3}, Case{4, 400, 0.4}}) {
      const GrayMap g = GrayMap::ring(c.k);
      const auto pair = worst_case_pair(c.m, c.delta, c.k, PairStrategy::even, &g);
      const double mu = 7.5;
      const Amplitudes a = encode_ring(pair.x, c.k, mu);
      const Amplitudes b = encode_ring(pair.y, c.k, mu);
      double log_nc = 0.0;
      for (std::size_t j = 0; j < a.size(); ++j) log_nc += -0.5 * std::norm(a[j] - b[j]);
      CHECK(ring_worst_case_error(c.k, mu, c.delta) == doctest::Approx(std::exp(log_nc)).epsilon(1e-12));
    }
  }

  TEST_CASE("ring profile exponent agrees with the closed form") {
    for (int k = 1; k <= 6; ++k)
      for (double d : {0.05, 0.2, 0.37, 0.49}) CHECK(ring_error_profile(k, d).exponent() == doctest::Approx(ring_error_exponent(k, d)));
  }

  TEST_CASE("lattice profile is the worse of the two placements") {
    for (int k : {2, 3, 4})
      for (double delta : {0.125, 0.25, 0.375}) {
        const GrayMap g = GrayMap::lattice(k);
        const std::size_t m = 64 * static_cast<std::size_t>(k);
        const double mu = 5.0;
        double smallest = 1e300;
        for (auto strat : {PairStrategy::even, PairStrategy::consolidated}) {
          const auto pair = worst_case_pair(m, delta, k, strat, &g);
          const Amplitudes a = encode_lattice(pair.x, k, mu);
          const Amplitudes b = encode_lattice(pair.y, k, mu);
          double s = 0.0;
          for (std::size_t j = 0; j < a.size(); ++j) s += 0.5 * std::norm(a[j] - b[j]);
          smallest = std::min(smallest, s / mu);
        }
        const ErrorProfile p = lattice_error_profile(k, delta);
        CHECK(p.geometry == Geometry::lattice);
        CHECK(p.exponent() == doctest::Approx(smallest).epsilon(1e-9));
      }
  }

  TEST_CASE("optimal threshold matches an exhaustive scan") {
    for (std::int64_t n : {5, 40, 300})
      for (auto [pd, pe] : {std::pair{0.02, 0.0}, std::pair{0.05, 0.001}, std::pair{0.3, 0.1}}) {
        const ThresholdResult r = optimal_threshold(n, pd, pe);
        double best = 2.0;
        for (std::int64_t t = 0; t <= n + 1; ++t)
          best = std::min(best, std::max(binomial_upper_tail(n, pe, t), binomial_lower_tail(n, pd, t)));
        CHECK(r.worst_case_error == doctest::Approx(best).epsilon(1e-12));
        CHECK(std::max(binomial_upper_tail(n, pe, r.d_th), binomial_lower_tail(n, pd, r.d_th)) ==
              doctest::Approx(best).epsilon(1e-12));
      }
    CHECK_THROWS(optimal_threshold(10, 0.1, 0.2));
  }

  TEST_CASE("ideal amplitude solution hits the target") {
    const NoiseModel ideal = NoiseModel::ideal();
    for (int k : {1, 2, 3}) {
      const auto sol = solve_amplitude(k, 3000, 0.3, 0.01, ideal);
      CHECK(ring_worst_case_error(k, sol.mu_received, 0.3) == doctest::Approx(0.01));
      CHECK(sol.mu_launched == sol.mu_received);
      AmplitudeOptions lb;
      lb.error_model = ErrorModel::optimal_lb;
      const auto s2 = solve_amplitude(k, 3000, 0.3, 0.01, ideal, lb);
      CHECK(optimal_measurement_error_lb(ring_worst_case_error(k, s2.mu_received, 0.3)) == doctest::Approx(0.01));
      CHECK(s2.mu_received < sol.mu_received);
    }
  }

  TEST_CASE("noisy amplitude solution meets the threshold model") {
    const NoiseModel noise{0.3, 7.3e-11, 1.0};
    const auto sol = solve_amplitude(2, 20000, 0.35, 0.01, noise);
    CHECK(sol.used_threshold_model);
    CHECK(sol.threshold.worst_case_error <= 0.01 * (1 + 1e-9));
    CHECK(sol.threshold.worst_case_error > 0.0099);
    CHECK(sol.mu_launched == doctest::Approx(sol.mu_received / 0.3));
    AmplitudeOptions lb;
    lb.error_model = ErrorModel::optimal_lb;
    CHECK_THROWS_AS(solve_amplitude(2, 20000, 0.35, 0.01, noise, lb), std::invalid_argument);
    AmplitudeOptions capped;
    capped.mu_cap = 1e-3;
    CHECK_THROWS_AS(solve_amplitude(2, 20000, 0.35, 0.01, noise, capped), InfeasibleError);
  }

  TEST_CASE("optimal-measurement bound inversion") {
    for (double e : {1e-5, 0.01, 0.3}) CHECK(optimal_measurement_error_lb(overlap_for_optimal_lb(e)) == doctest::Approx(e));
  }

  TEST_CASE("binary q-ary ring matches the k = 1 ring") {
    for (double d : {0.1, 0.4}) CHECK(qary_ring_error(2, 3.0, d) == doctest::Approx(ring_worst_case_error(1, 3.0, d)));
  }

  TEST_CASE("gray versus q-ary inequality at the edges") {
    const auto g = gray_beats_qary(3, (1.0 - 0.125) / 3.0);
    CHECK(g.holds);
    CHECK(g.rhs == doctest::Approx(std::log2(7.0)));
    CHECK_THROWS(gray_beats_qary(3, 0.5));
  }

  TEST_CASE("ED helpers") {
    const std::vector<std::int64_t> dark{10, 0}, light{30, 20};
    CHECK(ed_estimate(dark, light, 100, Complex(0.5, 0.0)) == doctest::Approx(2.0 - 40.0 / 25.0));
    CHECK(ed_repetition_plan(0.1, 0.05) == static_cast<std::int64_t>(std::ceil(200.0 * std::log(40.0))));
    CHECK(ed_repetition_plan(0.9, 1.0) == static_cast<std::int64_t>(std::ceil(2.0 * std::log(2.0) / 0.81)));
  }
}
