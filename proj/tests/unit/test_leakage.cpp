#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qfp/leakage.hpp"

using namespace qfp;

namespace {

double sum_subterms(const LeakageBound& b) {
  double s = 0.0;
  for (const auto& [_, v] : b.subterms) s += v;
  return s;
}

}  // namespace

TEST_SUITE("leakage") {
  TEST_CASE("probability vectors are validated") {
    CHECK_THROWS(ProbabilityVector({0.5, 0.6}));
    CHECK_THROWS(ProbabilityVector({1.1, -0.1}));
    CHECK(shannon_entropy(ProbabilityVector({0.25, 0.25, 0.25, 0.25})) == doctest::Approx(2.0));
  }

  TEST_CASE("ring residue distribution matches the Poisson series") {
    for (int k : {1, 2, 3, 5})
      for (double b2 : {0.01, 0.7, 4.0, 30.0}) {
        const ProbabilityVector lam = lambda_ring(k, b2);
        const std::size_t q = std::size_t{1} << k;
        std::vector<double> direct(q, 0.0);
        for (int h = 0; h < 400; ++h) direct[h % q] += std::exp(-b2 + h * std::log(b2) - std::lgamma(h + 1.0));
        for (std::size_t l = 0; l < q; ++l) CHECK(lam[l] == doctest::Approx(direct[l]).epsilon(1e-10));
      }
  }

  TEST_CASE("ring bound scales with the number of signals") {
    const LeakageBound b = qil_ring(2, 1000.0, 0.3);
    CHECK(b.bits == doctest::Approx(1000.0 * shannon_entropy(lambda_ring(2, 0.3))));
    CHECK(b.method == BoundMethod::schur_horn);
  }

  TEST_CASE("interpolation bound uses the entropy of its diagonal") {
    for (int k : {1, 4, 9})
      for (double p : {0.0, 0.2, 1.0}) {
        const LeakageBound b = qil_interpolation(k, 10 * k, p, 3);
        CHECK(b.param("entropy_per_signal") == doctest::Approx(shannon_entropy(lambda_interpolation(k, p))).epsilon(1e-12));
        CHECK(b.bits == doctest::Approx(2.0 * 10 * 3 * b.param("entropy_per_signal")));
      }
  }

  TEST_CASE("typical tail is a decreasing Chernoff sum") {
    const double mu = 12.0;
    double prev = 2.0;
    for (std::int64_t d = 1; d < 60; ++d) {
      const double t = typical_tail(d, mu, mu);
      CHECK(t <= prev);
      prev = t;
    }
    const double d = 5.0;
    const double lower = std::exp(-mu) * std::pow(std::numbers::e * mu / (mu - d), mu - d);
    const double upper = std::exp(-mu) * std::pow(std::numbers::e * mu / (mu + d), mu + d);
    CHECK(typical_tail(5, mu, mu) == doctest::Approx(lower + upper));
  }

  TEST_CASE("Fannes-Audenaert bound picks the smallest admissible Delta") {
    for (double eps : {1e-9, 1e-4, 0.1}) {
      const LeakageBound b = fannes_audenaert_bound(1000, 5000, 20.0, 30.0, eps);
      const auto delta = static_cast<std::int64_t>(b.param("delta"));
      CHECK(typical_tail(delta, 20.0, 30.0) <= eps);
      if (delta > 1) CHECK(typical_tail(delta - 1, 20.0, 30.0) > eps);
      CHECK(sum_subterms(b) == doctest::Approx(b.bits));
      CHECK(b.subterm("continuity") == doctest::Approx(2000.0 * std::sqrt(2.0 * eps)));
      CHECK(b.subterm("dimension") == doctest::Approx(typical_log_dim(delta, 5000, 20.0, 30.0)));
    }
    CHECK_THROWS(fannes_audenaert_bound(10, 10, 1.0, 1.0, 0.0));
  }

  TEST_CASE("optimized Fannes-Audenaert bound beats a fine scan") {
    const LeakageBound best = fannes_audenaert_optimized(10000, 40000, 40.0, 40.0);
    for (int i = 0; i <= 1000; ++i) {
      const double e = std::pow(10.0, -12.0 + 11.5 * i / 1000.0);
      CHECK(best.bits <= fannes_audenaert_bound(10000, 40000, 40.0, 40.0, e).bits * (1 + 1e-9));
    }
  }

  TEST_CASE("Poisson entropy") {
    double direct = 0.0;
    double f = 1.0;
    for (int j = 0; j < 80; ++j) {
      if (j > 0) f *= j;
      const double p = std::exp(-2.0) * std::pow(2.0, j) / f;
      if (p > 0) direct -= p * std::log2(p);
    }
    CHECK(poisson_entropy(2.0) == doctest::Approx(direct).epsilon(1e-12));
    CHECK(poisson_entropy(5000.0) == doctest::Approx(0.5 * std::log2(2 * std::numbers::pi * std::numbers::e * 5000.0)).epsilon(1e-4));
    CHECK(poisson_entropy(0.0) == 0.0);
  }

  TEST_CASE("asymptotic bound") {
    CHECK_THROWS(asymptotic_bound(100, 5.0, 5.0, 5));
    const LeakageBound b = asymptotic_bound(10000, 8.0, 10.0, 11);
    CHECK(sum_subterms(b) == doctest::Approx(b.bits));
    CHECK(b.subterm("entropy_c1") == doctest::Approx(poisson_entropy(10.0)));
    CHECK(b.param("truncation_index") >= 1.0);
    const LeakageBound loose = asymptotic_bound(10000, 8.0, 10.0, 11, 1e-6);
    CHECK(loose.bits == doctest::Approx(b.bits).epsilon(1e-5));
    // logarithmic in the number of modes
    const double b4 = asymptotic_bound(10000, 10.0, 10.0, 11).bits;
    const double b8 = asymptotic_bound(100000000, 10.0, 10.0, 11).bits;
    const double b12 = asymptotic_bound(1000000000000, 10.0, 10.0, 11).bits;
    CHECK((b12 - b8) == doctest::Approx(b8 - b4).epsilon(0.02));
  }

  TEST_CASE("classical reference") {
    const LeakageBound b = classical_reference(1e6, 0.5);
    CHECK(b.bits == doctest::Approx(500.0));
    CHECK(b.reference_only);
  }

  TEST_CASE("delta optimization is no worse than a grid") {
    QilRequest req;
    req.k = 2;
    req.n = 10000;
    const QilPoint best = optimize_delta_for_qil(req);
    for (int i = 0; i <= 200; ++i) {
      const double d = 0.01 + (0.4999 - 0.01) * i / 200.0;
      try {
        CHECK(best.bound.bits <= qil_at_delta(req, d).bound.bits * (1 + 1e-6));
      } catch (const InfeasibleError&) {
      }
    }
  }

  TEST_CASE("family pipelines") {
    QilRequest req;
    req.family = Family::lattice;
    req.k = 2;
    req.n = 1000;
    CHECK(qil_at_delta(req, 0.3).bound.method == BoundMethod::fannes_audenaert);
    req.k = 1;
    req.family = Family::qary_ring;
    const double qary = qil_at_delta(req, 0.3).bound.bits;
    req.family = Family::ring;
    CHECK(qary == doctest::Approx(qil_at_delta(req, 0.3).bound.bits));
    req.family = Family::interpolation;
    const QilPoint p = qil_at_delta(req, 0.3);
    CHECK(p.bound.bits > 0.0);
    req.noise = NoiseModel::lossy_channel();
    CHECK_THROWS(qil_at_delta(req, 0.3));
    req.family = Family::ring;
    req.k = 2;
    const QilPoint r = qil_at_delta(req, 0.3);
    CHECK(r.mu_launched == doctest::Approx(r.mu_received / 0.3));
  }
}
