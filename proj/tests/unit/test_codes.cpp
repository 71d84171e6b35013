#include <doctest.h>

#include <bit>
#include <cmath>

#include "qfp/codes.hpp"

using namespace qfp;

TEST_SUITE("codes") {
  TEST_CASE("binary entropy") {
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(binary_entropy(0.11) == doctest::Approx(-0.11 * std::log2(0.11) - 0.89 * std::log2(0.89)).epsilon(1e-14));
    CHECK_THROWS_AS(binary_entropy(1.5), std::domain_error);
  }

  TEST_CASE("binary GV length is the smallest admissible m") {
    for (std::int64_t n : {1, 10, 1000, 123457}) {
      for (double d : {0.05, 0.25, 0.4}) {
        const std::int64_t m = gv_binary_length(n, d);
        const double rate = 1.0 - binary_entropy(d);
        CHECK(static_cast<double>(n) <= rate * static_cast<double>(m) * (1 + 1e-12));
        CHECK(static_cast<double>(n) > rate * static_cast<double>(m - 1));
      }
    }
  }

  TEST_CASE("q-ary GV rate reduces to binary at q = 2") {
    for (double d : {0.01, 0.2, 0.45}) CHECK(qary_gv_rate(d, 2) == doctest::Approx(1.0 - binary_entropy(d)));
    const std::int64_t m = gv_qary_length(1000, 0.3, 4);
    CHECK(1000.0 <= qary_gv_rate(0.3, 4) * m * (1 + 1e-12));
    CHECK(1000.0 > qary_gv_rate(0.3, 4) * (m - 1));
  }

  TEST_CASE("gray code round trip") {
    for (std::uint32_t v = 0; v < 4096; ++v) {
      CHECK(gray_decode(gray_encode(v)) == v);
      CHECK(std::popcount(gray_encode(v) ^ gray_encode(v + 1)) == 1);
    }
  }

  TEST_CASE("ring and lattice maps are bijections with one-bit neighbours") {
    for (int k = 1; k <= 10; ++k) {
      const GrayMap r = GrayMap::ring(k);
      CHECK(r.size() == (std::size_t{1} << k));
      for (std::size_t p = 0; p < r.size(); ++p) CHECK(r.position_of(r.label_at(p)) == p);
      for (const auto& [a, b] : r.edges()) CHECK(std::popcount(r.label_at(a) ^ r.label_at(b)) == 1);
    }
    for (int k = 2; k <= 10; ++k) {
      const GrayMap l = GrayMap::lattice(k);
      CHECK(l.rows() * l.cols() == (1 << k));
      for (const auto& [a, b] : l.edges()) {
        CHECK(std::popcount(l.label_at(a) ^ l.label_at(b)) == 1);
        CHECK(std::abs(l.unit_point(l.label_at(a)) - l.unit_point(l.label_at(b))) == doctest::Approx(1.0));
      }
    }
  }

  TEST_CASE("ring unit points sit on the unit circle in position order") {
    const GrayMap r = GrayMap::ring(3);
    for (std::size_t p = 0; p < 8; ++p) {
      const auto z = r.unit_point(r.label_at(p));
      CHECK(std::abs(z) == doctest::Approx(1.0));
      CHECK(std::arg(z * std::polar(1.0, -2.0 * 3.141592653589793 * p / 8.0)) == doctest::Approx(0.0).epsilon(1e-12));
    }
  }

  TEST_CASE("block label reads MSB first with zero padding") {
    const Bits b{1, 0, 1, 1, 0};
    CHECK(block_label(b, 0, 2) == 2u);
    CHECK(block_label(b, 1, 2) == 3u);
    CHECK(block_label(b, 2, 2) == 0u);
    CHECK(block_label(b, 1, 3) == 4u);
  }

  TEST_CASE("closest label pair at Hamming distance c") {
    const GrayMap r = GrayMap::ring(3);
    const LabelPair p1 = closest_label_pair(r, 1);
    CHECK(std::popcount(p1.a ^ p1.b) == 1);
    CHECK(std::abs(r.unit_point(p1.a) - r.unit_point(p1.b)) == doctest::Approx(2 * std::sin(3.141592653589793 / 8)));
    const LabelPair p3 = closest_label_pair(r, 3);
    CHECK(std::popcount(p3.a ^ p3.b) == 3);
    // brute-force minimum over all 3-bit-apart pairs
    double best = 1e9;
    for (std::uint32_t a = 0; a < 8; ++a)
      for (std::uint32_t b = 0; b < 8; ++b)
        if (std::popcount(a ^ b) == 3) best = std::min(best, std::abs(r.unit_point(a) - r.unit_point(b)));
    CHECK(std::abs(r.unit_point(p3.a) - r.unit_point(p3.b)) == doctest::Approx(best));
  }

  TEST_CASE("worst-case pairs have the requested distance and spread") {
    for (int k : {1, 2, 3, 4}) {
      const GrayMap g = GrayMap::ring(k);
      for (auto strat : {PairStrategy::even, PairStrategy::consolidated}) {
        const std::size_t m = 120;
        const double delta = 0.3;
        for (const GrayMap* geo : {static_cast<const GrayMap*>(nullptr), &g}) {
          const CodewordPair p = worst_case_pair(m, delta, k, strat, geo);
          CHECK(p.x.size() == m);
          CHECK(hamming_distance(p.x, p.y) == 36u);
          const auto h = block_histogram(p.x, p.y, k);
          int lo = k, hi = 0, total = 0;
          for (int c : h) {
            lo = std::min(lo, c);
            hi = std::max(hi, c);
            total += c;
          }
          CHECK(total == 36);
          if (strat == PairStrategy::even) CHECK(hi - lo <= 1);
        }
      }
    }
  }
}
