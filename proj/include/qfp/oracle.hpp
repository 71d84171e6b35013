#pragma once

// Brute-force reference computations on explicit state vectors.

#include <array>
#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qfp/constellations.hpp"

namespace qfp::oracle {

/// Single-mode state on Fock levels 0..cutoff.
struct TruncatedFockState {
  int cutoff = 0;
  Eigen::VectorXcd amplitudes;

  double norm() const { return amplitudes.norm(); }
};

/// max(20, ceil(|beta|^2 + 8 sqrt(|beta|^2 + 1))).
int default_cutoff(Complex beta);

/// Coefficients e^{-|b|^2/2} b^h / sqrt(h!). Throws std::domain_error when |b|^2 > cutoff/3.
TruncatedFockState coherent_fock(Complex beta, int cutoff);

Complex overlap(const TruncatedFockState& a, const TruncatedFockState& b);

struct PortClicks {
  double dark = 0.0;   // port (a - b)/sqrt(2)
  double light = 0.0;  // port (a + b)/sqrt(2)
};

/// Exact 50/50 mixing of two single-mode states; click = 1 - Pr(port in vacuum).
PortClicks beamsplitter_click_probs(const TruncatedFockState& a, const TruncatedFockState& b);

struct CoherentQubits {
  Eigen::Vector2d q0;
  Eigen::Vector2d q1;
  double p = 0.0;
};

/// Qubit pair sqrt(1-p)|0> +- sqrt(p)|1> with p = e^{-|b|^2} sinh |b|^2, b = (b0 - b1)/2.
CoherentQubits qubit_from_coherent(Complex beta_0, Complex beta_1);

struct UscOutcome {
  double same = 0.0;
  double different = 0.0;
  double inconclusive = 0.0;
};

/// Equal-prior USD on span{|00>,|11>} plus swap test on span{|01>,|10>},
/// applied to |q_a>|q_b> with qubit parameter p.
UscOutcome usc_outcome_probs(int a, int b, double p);

/// POVM element of outcome "different" on two qubits (basis index 2*qa + qb).
Eigen::Matrix4d usc_different_element(double p);

/// ||(1 - W)/2 psi||^2 for psi in C^d (x) C^d.
double cswap_antisym_prob(const Eigen::VectorXcd& state);

/// Per-signal no-detection probability of the interpolation measurement,
/// built from explicit signal vectors. Requires k <= 4 and m <= 8.
std::vector<double> interp_measurement_oracle(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y,
                                              int k, double p_k);

/// Orthonormal basis of span(vectors) with rank tolerance `tol`.
Eigen::MatrixXcd orthonormal_span(const std::vector<Eigen::VectorXcd>& vectors, double tol = 1e-10);

/// <psi_x psi_y| Pi_EQ |psi_x psi_y> where Pi_EQ projects onto span{|psi_z psi_z>}.
double optimal_projector_error(const std::vector<Eigen::VectorXcd>& states_equal, const Eigen::VectorXcd& probe_x,
                               const Eigen::VectorXcd& probe_y);

}  // namespace qfp::oracle
