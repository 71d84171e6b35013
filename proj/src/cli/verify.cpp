#include "qfp/cli/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

#include "qfp/analysis.hpp"
#include "qfp/codes.hpp"
#include "qfp/oracle.hpp"

namespace qfp::cli {

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"overlap", "usc", "interp", "projector", "gray", "qary"};
  return names;
}

namespace {

Complex random_in_disc(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = radius * std::sqrt(u(rng));
  const double t = 2.0 * 3.141592653589793 * u(rng);
  return std::polar(r, t);
}

SuiteResult overlap_suite(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SuiteResult s;
  s.name = "overlap";
  for (int i = 0; i < 100; ++i) {
    const Complex a = random_in_disc(rng, 2.0);
    const Complex b = random_in_disc(rng, 2.0);
    const double got = std::abs(oracle::overlap(oracle::coherent_fock(a, 60), oracle::coherent_fock(b, 60)));
    s.worst = std::max(s.worst, std::abs(got - std::exp(-0.5 * std::norm(a - b))));
    ++s.cases;
  }
  s.passed = s.worst < 1e-9;
  s.detail = "max | |<a|b>| - exp(-|a-b|^2/2) | at cutoff 60";
  return s;
}

SuiteResult usc_suite() {
  SuiteResult s;
  s.name = "usc";
  for (int i = 0; i <= 50; ++i) {
    const double p = 0.5 * i / 50.0;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const auto o = oracle::usc_outcome_probs(a, b, p);
        s.worst = std::max(s.worst, std::abs(o.inconclusive - std::abs(1.0 - 2.0 * p)));
        ++s.cases;
      }
  }
  for (int i = 1; i <= 20; ++i) {
    const double beta = 0.1 * i;
    const auto q = oracle::qubit_from_coherent(beta, -beta);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const auto fa = oracle::coherent_fock(a ? -beta : beta, 60);
        const auto fb = oracle::coherent_fock(b ? -beta : beta, 60);
        const auto clicks = oracle::beamsplitter_click_probs(fa, fb);
        const auto o = oracle::usc_outcome_probs(a, b, q.p);
        s.worst = std::max({s.worst, std::abs(clicks.dark - o.different), std::abs(clicks.light - o.same)});
        ++s.cases;
      }
  }
  s.passed = s.worst < 1e-10;
  s.detail = "inconclusive vs |<q0|q1>| and beamsplitter ports vs qubit measurement";
  return s;
}

SuiteResult interp_suite() {
  SuiteResult s;
  s.name = "interp";
  for (int k = 1; k <= 4; ++k)
    for (int d = 0; d <= k; ++d)
      for (double p_k : {0.1, 0.25, 0.5, 0.75, 1.0}) {
        Bits x(static_cast<std::size_t>(k), 0), y(static_cast<std::size_t>(k), 0);
        for (int i = 0; i < d; ++i) y[static_cast<std::size_t>(i)] = 1;
        const double got = oracle::interp_measurement_oracle(x, y, k, p_k).front();
        s.worst = std::max(s.worst, std::abs(got - interp_nd_prob(d, k, p_k)));
        ++s.cases;
      }
  s.passed = s.worst < 1e-10;
  s.detail = "explicit-vector no-detection probability vs closed form";
  return s;
}

Eigen::VectorXcd random_state(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::VectorXcd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(g(rng), g(rng));
  return v.normalized();
}

SuiteResult projector_suite(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SuiteResult s;
  s.name = "projector";
  s.worst = 1.0;
  std::uniform_int_distribution<int> dim_pick(2, 5);
  std::uniform_int_distribution<int> count_pick(2, 6);
  for (int e = 0; e < 50; ++e) {
    const int dim = dim_pick(rng);
    const int count = count_pick(rng);
    std::vector<Eigen::VectorXcd> states;
    for (int i = 0; i < count; ++i) states.push_back(random_state(rng, dim));
    const double c = std::abs(states[0].dot(states[1]));
    const double err = oracle::optimal_projector_error(states, states[0], states[1]);
    const double lb = optimal_measurement_error_lb(c);
    s.worst = std::min({s.worst, err - lb, lb - c * c});
    ++s.cases;
  }
  s.passed = s.worst >= -1e-12;
  s.detail = "min slack of error >= 2c^2/(1+c^2) >= c^2";
  return s;
}

SuiteResult gray_suite() {
  SuiteResult s;
  s.name = "gray";
  int violations = 0;
  auto check = [&](const GrayMap& map) {
    for (const auto& [p, q] : map.edges()) {
      if (std::popcount(map.label_at(p) ^ map.label_at(q)) != 1) ++violations;
      ++s.cases;
    }
  };
  for (int k = 1; k <= 16; ++k) check(GrayMap::ring(k));
  for (int k = 2; k <= 16; ++k) check(GrayMap::lattice(k));
  s.worst = violations;
  s.passed = violations == 0;
  s.detail = "adjacent positions whose labels differ in more than one bit";
  return s;
}

SuiteResult qary_suite() {
  SuiteResult s;
  s.name = "qary";
  s.worst = std::numeric_limits<double>::infinity();
  for (int k = 2; k <= 6; ++k) {
    const double cap = (1.0 - std::ldexp(1.0, -k)) / k;
    for (int i = 1; i <= 1000; ++i) {
      const GrayVsQary g = gray_beats_qary(k, cap * i / 1000.0);
      s.worst = std::min(s.worst, g.slack);
      ++s.cases;
    }
  }
  s.passed = s.worst >= 0.0;
  s.detail = "min slack of h(d)/d - h(kd)/(kd) <= log2(2^k - 1)";
  return s;
}

}  // namespace

SuiteResult run_suite(const std::string& name, std::uint64_t seed) {
  if (name == "overlap") return overlap_suite(seed);
  if (name == "usc") return usc_suite();
  if (name == "interp") return interp_suite();
  if (name == "projector") return projector_suite(seed);
  if (name == "gray") return gray_suite();
  if (name == "qary") return qary_suite();
  throw std::invalid_argument("unknown suite '" + name + "'");
}

std::vector<SuiteResult> run_verify(const std::vector<std::string>& names, std::uint64_t seed) {
  const auto& chosen = names.empty() ? suite_names() : names;
  std::vector<SuiteResult> out;
  for (const auto& n : chosen) out.push_back(run_suite(n, seed));
  return out;
}

nlohmann::json to_json(const std::vector<SuiteResult>& results) {
  nlohmann::json j = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    j.push_back({{"suite", r.name}, {"passed", r.passed}, {"cases", r.cases}, {"worst", r.worst}, {"detail", r.detail}});
    all = all && r.passed;
  }
  return {{"suites", j}, {"passed", all}};
}

}  // namespace qfp::cli
