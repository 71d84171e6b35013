#include <doctest.h>

#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "qfp/binomial.hpp"

using qfp::binomial_lower_tail;
using qfp::binomial_upper_tail;
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

namespace {

// Exact Pr(X >= t) for X ~ Bin(n, num/den).
double exact_upper(int n, int num, int den, int t) {
  const Rational p(num, den);
  const Rational q = 1 - p;
  std::vector<Rational> pp(n + 1, Rational(1)), qq(n + 1, Rational(1));
  for (int j = 1; j <= n; ++j) {
    pp[j] = pp[j - 1] * p;
    qq[j] = qq[j - 1] * q;
  }
  Rational sum = 0;
  Integer choose = 1;
  for (int j = 0; j <= n; ++j) {
    if (j > 0) choose = choose * (n - j + 1) / j;
    if (j >= t) sum += Rational(choose) * pp[j] * qq[n - j];
  }
  return sum.convert_to<double>();
}

}  // namespace

TEST_SUITE("binomial") {
  TEST_CASE("tails match exact rational sums") {
    for (int n : {1, 7, 60, 200})
      for (auto [num, den] : {std::pair{1, 8}, std::pair{1, 2}, std::pair{7, 10}, std::pair{1, 1000}})
        for (int t = 0; t <= n + 1; t += std::max(1, n / 13)) {
          const double p = static_cast<double>(num) / den;
          const double up = exact_upper(n, num, den, t);
          CHECK(binomial_upper_tail(n, p, t) == doctest::Approx(up).epsilon(1e-12));
          CHECK(binomial_lower_tail(n, p, t) == doctest::Approx(1.0 - up).epsilon(1e-12));
        }
  }

  TEST_CASE("deep tails stay relative-accurate") {
    const double up = exact_upper(200, 1, 1000, 20);
    CHECK(up < 1e-30);
    CHECK(binomial_upper_tail(200, 1e-3, 20) == doctest::Approx(up).epsilon(1e-10));
  }

  TEST_CASE("edge cases") {
    CHECK(binomial_upper_tail(10, 0.3, 0) == 1.0);
    CHECK(binomial_upper_tail(10, 0.3, 11) == 0.0);
    CHECK(binomial_upper_tail(10, 0.0, 1) == 0.0);
    CHECK(binomial_upper_tail(10, 1.0, 10) == 1.0);
    CHECK(binomial_lower_tail(10, 0.3, 0) == 0.0);
    CHECK(binomial_lower_tail(0, 0.3, 0) == 0.0);
  }
}
