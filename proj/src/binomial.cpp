#include "qfp/binomial.hpp"

#include <stdexcept>

#include <boost/math/special_functions/beta.hpp>

namespace qfp {

namespace {

void check(std::int64_t n, double p) {
  if (n < 0) throw std::invalid_argument("binomial tail: n must be >= 0");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binomial tail: p must lie in [0, 1]");
}

}  // namespace

double binomial_upper_tail(std::int64_t n, double p, std::int64_t t) {
  check(n, p);
  if (t <= 0) return 1.0;
  if (t > n) return 0.0;
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  return boost::math::ibeta(static_cast<double>(t), static_cast<double>(n - t + 1), p);
}

double binomial_lower_tail(std::int64_t n, double p, std::int64_t t) {
  check(n, p);
  if (t <= 0) return 0.0;
  if (t > n) return 1.0;
  if (p == 0.0) return 1.0;
  if (p == 1.0) return 0.0;
  return boost::math::ibetac(static_cast<double>(t), static_cast<double>(n - t + 1), p);
}

}  // namespace qfp
