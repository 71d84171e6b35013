#pragma once

// Upper bounds on quantum information leakage (bits).

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qfp/analysis.hpp"
#include "qfp/constellations.hpp"

namespace qfp {

class ProbabilityVector {
 public:
  /// Throws std::invalid_argument on negative entries or a sum off 1 by more than 1e-12.
  explicit ProbabilityVector(std::vector<double> entries);

  const std::vector<double>& entries() const noexcept { return p_; }
  std::size_t size() const noexcept { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }

 private:
  std::vector<double> p_;
};

enum class BoundMethod { schur_horn, fannes_audenaert, asymptotic, classical_ref };

std::string_view to_string(BoundMethod m) noexcept;

struct LeakageBound {
  double bits = 0.0;
  BoundMethod method = BoundMethod::schur_horn;
  std::vector<std::pair<std::string, double>> subterms;  // additive parts of `bits`
  std::vector<std::pair<std::string, double>> params;    // choices made by the bound
  bool reference_only = false;

  double subterm(std::string_view name) const;
  double param(std::string_view name) const;
};

double shannon_entropy(const ProbabilityVector& lambda);

/// (1 - p, p/(2k), ..., p/(2k)), length 2k+1.
ProbabilityVector lambda_interpolation(int k, double p_k);

/// 2 ceil(m/k) r H(lambda_interpolation). Param "analytic_cap" holds
/// 2r(2 + (1 + k/m) log2(2m)).
LeakageBound qil_interpolation(int k, std::int64_t m, double p_k, std::int64_t r);

/// Photon-number residue distribution mod 2^k of a coherent state with mean |beta|^2.
ProbabilityVector lambda_ring(int k, double beta_sq);

/// (2m/k) H(lambda_ring(k, beta_sq)).
LeakageBound qil_ring(int k, double m, double beta_sq);

/// Upper bound on Pr(total photons outside [mu_min - Delta, mu_max + Delta]).
double typical_tail(std::int64_t delta, double mu_min, double mu_max);

/// log2 dim of the typical subspace over `modes` modes.
double typical_log_dim(std::int64_t delta, std::int64_t modes, double mu_min, double mu_max);

/// Continuity bound at fixed eps_prime for `modes` modes whose total mean
/// photon number lies in [mu_min, mu_max] and 2^(2n) possible states.
/// Subterms: dimension, continuity, binary. Params: delta, eps_prime.
LeakageBound fannes_audenaert_bound(std::int64_t n, std::int64_t modes, double mu_min, double mu_max,
                                    double eps_prime);

/// Same bound minimized exactly over eps_prime in [1e-12, 10^-0.5].
LeakageBound fannes_audenaert_optimized(std::int64_t n, std::int64_t modes, double mu_min, double mu_max);

/// Telescoping bound: H(Poisson(mu_max)) + sum_j Pr(C1=j) log2 dim(Pi_j).
/// Requires Delta > mu_max. Param "truncation_index" is the last j summed.
LeakageBound asymptotic_bound(std::int64_t modes, double mu_min, double mu_max, std::int64_t delta, double tol = 1e-15);

/// Entropy in bits of Poisson(mu).
double poisson_entropy(double mu);

/// c sqrt(n), reference only.
LeakageBound classical_reference(double n, double c = 1.0);

struct QilRequest {
  Family family = Family::ring;
  int k = 1;
  std::int64_t n = 1000;
  double epsilon = 0.01;
  NoiseModel noise{};
  ErrorModel error_model = ErrorModel::direct;
  double delta_floor = 1e-3;
  double delta_cap = 0.5 - 1e-4;  // qary_ring may go up to 1 - 1/q
  double tol = 1e-6;
  int coarse_points = 48;
};

struct QilPoint {
  double delta = 0.0;
  std::int64_t m = 0;
  std::int64_t m_k = 0;
  double mu_received = 0.0;
  double mu_launched = 0.0;
  std::int64_t r = 1;  // interpolation only
  LeakageBound bound;
};

/// Leakage bound of one family at one code distance; throws InfeasibleError.
QilPoint qil_at_delta(const QilRequest& req, double delta);

/// Minimizes qil_at_delta over delta: coarse log-spaced scan, then
/// Brent refinement around the best feasible point.
QilPoint optimize_delta_for_qil(const QilRequest& req);

}  // namespace qfp
