#pragma once

#include <cstdint>

namespace qfp {

/// Pr(Bin(n, p) >= t). Exact to working precision through the regularized
/// incomplete beta function; t <= 0 gives 1 and t > n gives 0.
double binomial_upper_tail(std::int64_t n, double p, std::int64_t t);

/// Pr(Bin(n, p) < t), evaluated without forming 1 - upper tail.
double binomial_lower_tail(std::int64_t n, double p, std::int64_t t);

}  // namespace qfp
