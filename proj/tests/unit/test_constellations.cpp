#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qfp/constellations.hpp"

using namespace qfp;

TEST_SUITE("constellations") {
  TEST_CASE("family names round trip") {
    for (Family f : {Family::interpolation, Family::ring, Family::lattice, Family::qary_ring, Family::ed_real, Family::ed_complex})
      CHECK(family_from_string(to_string(f)) == f);
    CHECK_THROWS(family_from_string("triangle"));
  }

  TEST_CASE("ring amplitude spreads mu over the signals") {
    CHECK(ring_amplitude(2, 100, 50.0) == doctest::Approx(1.0));
    const Constellation c = ring_constellation(3, 2.0);
    for (std::uint32_t l = 0; l < 8; ++l) CHECK(c.mean_photons(l) == doctest::Approx(4.0));
  }

  TEST_CASE("ring encoding uses Gray positions") {
    const Bits cw{0, 1, 1, 1};
    const Amplitudes a = encode_ring(cw, 2, 2.0);
    REQUIRE(a.size() == 2);
    const GrayMap g = GrayMap::ring(2);
    for (std::size_t j = 0; j < 2; ++j) {
      const auto label = block_label(cw, j, 2);
      const double angle = 2.0 * std::numbers::pi * g.position_of(label) / 4.0;
      CHECK(std::abs(a[j] - std::polar(1.0, angle)) < 1e-12);
    }
  }

  TEST_CASE("lattice constellation mean photon number") {
    for (int k = 2; k <= 7; ++k) {
      const Constellation c = lattice_constellation(k, 3.0);
      double mean = 0.0;
      Complex centre = 0.0;
      for (std::uint32_t l = 0; l < c.points.size(); ++l) {
        mean += c.mean_photons(l);
        centre += c.points[l];
      }
      CHECK(mean / c.points.size() == doctest::Approx(3.0));
      CHECK(std::abs(centre) < 1e-9);
    }
  }

  TEST_CASE("lattice photon range brackets every codeword") {
    const int k = 4;
    const std::int64_t m = 8;
    const PhotonRange r = lattice_photon_range(k, m, 10.0);
    double lo = 1e300, hi = 0.0, sum = 0.0;
    for (std::uint32_t w = 0; w < 256; ++w) {
      Bits cw(8);
      for (int i = 0; i < 8; ++i) cw[i] = (w >> (7 - i)) & 1u;
      const Amplitudes a = encode_lattice(cw, k, 10.0);
      double tot = 0.0;
      for (const auto& z : a) tot += std::norm(z);
      lo = std::min(lo, tot);
      hi = std::max(hi, tot);
      sum += tot;
    }
    CHECK(r.min == doctest::Approx(lo));
    CHECK(r.max == doctest::Approx(hi));
    CHECK(sum / 256.0 == doctest::Approx(10.0));
  }

  TEST_CASE("ED encodings") {
    const std::vector<double> u{0.6, 0.0, 0.8};
    const Amplitudes r = encode_ed(u, Complex(2.0, 0.0), EdVariant::real);
    CHECK(r.size() == 3);
    CHECK(std::abs(r[2] - Complex(1.6, 0.0)) < 1e-12);
    const Amplitudes c = encode_ed(u, Complex(2.0, 0.0), EdVariant::complex_packed);
    CHECK(c.size() == 2);
    CHECK(std::abs(c[0] - Complex(1.2, 0.0)) < 1e-12);
    CHECK(std::abs(c[1] - Complex(1.6, 0.0)) < 1e-12);
    const std::vector<double> bad{1.0, 1.0};
    CHECK_THROWS(encode_ed(bad, Complex(1.0, 0.0), EdVariant::real));
  }

  TEST_CASE("interpolation qubits and states") {
    const auto q = interpolation_qubits(0.3);
    CHECK(q[0].dot(q[1]) == doctest::Approx(0.7));
    CHECK(q[0].norm() == doctest::Approx(1.0));
    const Bits block{1, 0, 1};
    const auto s = interpolation_signal(block, 0.3);
    CHECK(s.size() == 6);
    CHECK(s.norm() == doctest::Approx(1.0));
    const Bits cw{1, 0, 1, 1, 1, 0};
    const auto v = interpolation_state_vector(cw, 3, 0.3);
    CHECK(v.size() == 36);
    CHECK(v.norm() == doctest::Approx(1.0));
    const Bits big(40, 0);
    CHECK_THROWS_AS(interpolation_state_vector(big, 1, 0.3), std::length_error);
  }

  TEST_CASE("protocol instance validation") {
    ProtocolInstance p;
    p.family = Family::ring;
    p.k = 2;
    p.m = 10;
    p.mu = 1.0;
    CHECK_NOTHROW(p.validate());
    CHECK(p.signal_count() == 5);
    p.k = 0;
    CHECK_THROWS(p.validate());
  }
}
