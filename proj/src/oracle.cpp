#include "qfp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qfp::oracle {

int default_cutoff(Complex beta) {
  const double n = std::norm(beta);
  return std::max(20, static_cast<int>(std::ceil(n + 8.0 * std::sqrt(n + 1.0))));
}

TruncatedFockState coherent_fock(Complex beta, int cutoff) {
  if (cutoff < 1) throw std::invalid_argument("coherent_fock: cutoff must be >= 1");
  if (std::norm(beta) > cutoff / 3.0) throw std::domain_error("coherent_fock: |beta|^2 exceeds cutoff/3");
  TruncatedFockState s{cutoff, Eigen::VectorXcd(cutoff + 1)};
  s.amplitudes(0) = std::exp(-0.5 * std::norm(beta));
  for (int h = 1; h <= cutoff; ++h) s.amplitudes(h) = s.amplitudes(h - 1) * beta / std::sqrt(static_cast<double>(h));
  return s;
}

Complex overlap(const TruncatedFockState& a, const TruncatedFockState& b) {
  if (a.cutoff != b.cutoff) throw std::invalid_argument("overlap: cutoff mismatch");
  return a.amplitudes.dot(b.amplitudes);
}

PortClicks beamsplitter_click_probs(const TruncatedFockState& a, const TruncatedFockState& b) {
  if (a.cutoff != b.cutoff) throw std::invalid_argument("beamsplitter_click_probs: cutoff mismatch");
  const int n = a.cutoff;
  double dark_vacuum = 0.0;
  double light_vacuum = 0.0;
  for (int p = 0; p <= 2 * n; ++p) {
    Complex to_light{0.0, 0.0};  // amplitude of |p>_light |0>_dark
    Complex to_dark{0.0, 0.0};   // amplitude of |0>_light |p>_dark
    const double lp = std::lgamma(p + 1.0) - p * std::numbers::ln2;
    for (int na = std::max(0, p - n); na <= std::min(p, n); ++na) {
      const int nb = p - na;
      const double coef = std::exp(0.5 * (lp - std::lgamma(na + 1.0) - std::lgamma(nb + 1.0)));
      const Complex term = a.amplitudes(na) * b.amplitudes(nb) * coef;
      to_light += term;
      to_dark += (nb % 2 == 0) ? term : -term;
    }
    dark_vacuum += std::norm(to_light);
    light_vacuum += std::norm(to_dark);
  }
  return {std::clamp(1.0 - dark_vacuum, 0.0, 1.0), std::clamp(1.0 - light_vacuum, 0.0, 1.0)};
}

CoherentQubits qubit_from_coherent(Complex beta_0, Complex beta_1) {
  const double x = std::norm(0.5 * (beta_0 - beta_1));
  const double p = -0.5 * std::expm1(-2.0 * x);  // e^{-x} sinh x
  CoherentQubits q;
  q.p = p;
  q.q0 = Eigen::Vector2d(std::sqrt(1.0 - p), std::sqrt(p));
  q.q1 = Eigen::Vector2d(std::sqrt(1.0 - p), -std::sqrt(p));
  return q;
}

namespace {

void check_p(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("usc: p must lie in [0, 1]");
}

// Equal-prior USD elements on span{|00>,|11>} for states (1-p)|00> +- p|11>.
struct UsdPair {
  Eigen::Matrix4d plus = Eigen::Matrix4d::Zero();
  Eigen::Matrix4d minus = Eigen::Matrix4d::Zero();
};

UsdPair usd_elements(double p) {
  const double a = 1.0 - p;
  const double norm2 = a * a + p * p;
  const double s = std::abs((a * a - p * p) / norm2);
  const double r = std::sqrt(norm2);
  Eigen::Vector4d perp_plus(p / r, 0.0, 0.0, -a / r);
  Eigen::Vector4d perp_minus(p / r, 0.0, 0.0, a / r);
  UsdPair e;
  e.minus = perp_plus * perp_plus.transpose() / (1.0 + s);
  e.plus = perp_minus * perp_minus.transpose() / (1.0 + s);
  return e;
}

Eigen::Matrix4d swap_projector(bool antisymmetric) {
  Eigen::Vector4d v(0.0, 1.0, antisymmetric ? -1.0 : 1.0, 0.0);
  v /= std::sqrt(2.0);
  return v * v.transpose();
}

Eigen::Vector4d qubit_pair(int a, int b, double p) {
  const Eigen::Vector2d qa(std::sqrt(1.0 - p), (a ? -1.0 : 1.0) * std::sqrt(p));
  const Eigen::Vector2d qb(std::sqrt(1.0 - p), (b ? -1.0 : 1.0) * std::sqrt(p));
  return Eigen::Vector4d(qa(0) * qb(0), qa(0) * qb(1), qa(1) * qb(0), qa(1) * qb(1));
}

}  // namespace

Eigen::Matrix4d usc_different_element(double p) {
  check_p(p);
  return usd_elements(p).minus + swap_projector(true);
}

UscOutcome usc_outcome_probs(int a, int b, double p) {
  check_p(p);
  if ((a != 0 && a != 1) || (b != 0 && b != 1)) throw std::invalid_argument("usc_outcome_probs: a and b must be bits");
  const UsdPair usd = usd_elements(p);
  const Eigen::Matrix4d same = usd.plus + swap_projector(false);
  const Eigen::Matrix4d diff = usd.minus + swap_projector(true);
  const Eigen::Vector4d psi = qubit_pair(a, b, p);
  UscOutcome o;
  o.same = psi.dot(same * psi);
  o.different = psi.dot(diff * psi);
  o.inconclusive = psi.squaredNorm() - o.same - o.different;
  return o;
}

double cswap_antisym_prob(const Eigen::VectorXcd& state) {
  const auto total = state.size();
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(total))));
  if (d * d != total) throw std::invalid_argument("cswap_antisym_prob: state is not in C^d (x) C^d");
  double p = 0.0;
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) p += std::norm(0.5 * (state(i * d + j) - state(j * d + i)));
  return p;
}

std::vector<double> interp_measurement_oracle(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y,
                                              int k, double p_k) {
  if (x.size() != y.size()) throw std::invalid_argument("interp_measurement_oracle: length mismatch");
  if (k < 1 || k > 4 || x.empty() || x.size() > 8)
    throw std::length_error("interp_measurement_oracle: needs 1 <= k <= 4 and 1 <= m <= 8");
  const Eigen::Matrix4d e_diff = usc_different_element(0.5 * p_k);
  const std::size_t kk = static_cast<std::size_t>(k);
  const std::size_t blocks = (x.size() + kk - 1) / kk;
  const Eigen::Index dim = 2 * k;

  std::vector<double> out;
  std::vector<std::uint8_t> bx(kk), by(kk);
  for (std::size_t j = 0; j < blocks; ++j) {
    for (std::size_t i = 0; i < kk; ++i) {
      const std::size_t idx = j * kk + i;
      bx[i] = idx < x.size() ? x[idx] : 0;
      by[i] = idx < y.size() ? y[idx] : 0;
    }
    const Eigen::VectorXcd sa = interpolation_state_vector(bx, k, p_k);
    const Eigen::VectorXcd sb = interpolation_state_vector(by, k, p_k);
    Eigen::VectorXcd joint(dim * dim);
    for (Eigen::Index u = 0; u < dim; ++u) joint.segment(u * dim, dim) = sa(u) * sb;

    double detect = 0.0;
    Eigen::VectorXcd off = joint;
    for (Eigen::Index i = 0; i < k; ++i) {
      Eigen::Vector4cd v;
      for (int qa = 0; qa < 2; ++qa)
        for (int qb = 0; qb < 2; ++qb) {
          const Eigen::Index idx = (2 * i + qa) * dim + (2 * i + qb);
          v(2 * qa + qb) = joint(idx);
          off(idx) = 0.0;
        }
      detect += std::real(v.dot(e_diff.cast<Complex>() * v));
    }
    detect += cswap_antisym_prob(off);
    out.push_back(1.0 - detect);
  }
  return out;
}

Eigen::MatrixXcd orthonormal_span(const std::vector<Eigen::VectorXcd>& vectors, double tol) {
  if (vectors.empty()) return Eigen::MatrixXcd();
  const Eigen::Index d = vectors.front().size();
  std::vector<Eigen::VectorXcd> basis;
  for (const auto& v : vectors) {
    if (v.size() != d) throw std::invalid_argument("orthonormal_span: dimension mismatch");
    Eigen::VectorXcd w = v;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) w -= b.dot(w) * b;
    const double n = w.norm();
    if (n > tol) basis.push_back(w / n);
  }
  Eigen::MatrixXcd q(d, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) q.col(static_cast<Eigen::Index>(i)) = basis[i];
  return q;
}

namespace {

Eigen::VectorXcd kron(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  Eigen::VectorXcd out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

}  // namespace

double optimal_projector_error(const std::vector<Eigen::VectorXcd>& states_equal, const Eigen::VectorXcd& probe_x,
                               const Eigen::VectorXcd& probe_y) {
  if (states_equal.empty()) throw std::invalid_argument("optimal_projector_error: empty equal set");
  const Eigen::Index d = probe_x.size();
  if (probe_y.size() != d) throw std::invalid_argument("optimal_projector_error: probe dimension mismatch");
  if (d * d > 4096) throw std::length_error("optimal_projector_error: total dimension exceeds 4096");
  std::vector<Eigen::VectorXcd> doubled;
  doubled.reserve(states_equal.size());
  for (const auto& s : states_equal) {
    if (s.size() != d) throw std::invalid_argument("optimal_projector_error: state dimension mismatch");
    doubled.push_back(kron(s, s));
  }
  const Eigen::MatrixXcd q = orthonormal_span(doubled);
  const Eigen::VectorXcd probe = kron(probe_x, probe_y);
  return (q.adjoint() * probe).squaredNorm();
}

}  // namespace qfp::oracle
