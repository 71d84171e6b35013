#pragma once

// Signal-level descriptions of every protocol family.

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qfp/codes.hpp"

namespace qfp {

using Complex = std::complex<double>;
using Amplitudes = std::vector<Complex>;

enum class Family { interpolation, ring, lattice, qary_ring, ed_real, ed_complex };

std::string_view to_string(Family f) noexcept;
Family family_from_string(std::string_view name);

/// One fully parameterized protocol.
struct ProtocolInstance {
  Family family = Family::ring;
  int k = 1;              // block size in bits
  std::int64_t m = 0;     // codeword length
  double delta = 0.0;     // relative minimum distance of the code
  double mu = 0.0;        // total launched mean photon number (coherent families)
  double p_k = 0.0;       // 1 - <q0|q1> (interpolation)
  std::int64_t r = 1;     // repetition number (interpolation)
  std::int64_t s = 0;     // vector dimension (ED)
  Complex alpha{0.0, 0.0};  // ED amplitude

  /// Number of signals per party.
  std::int64_t signal_count() const;
  void validate() const;
};

/// Labelled signal points of a ring or lattice family.
struct Constellation {
  std::vector<Complex> points;  // indexed by label
  GrayMap labels;

  double mean_photons(std::uint32_t label) const { return std::norm(points.at(label)); }
};

/// beta_k = sqrt(mu / (m/k)).
double ring_amplitude(int k, std::int64_t m, double mu);

/// Ring of 2^k points omega^pos * beta with Gray position 0 on the positive real axis.
Constellation ring_constellation(int k, double beta);

/// Centred 2^ceil(k/2) x 2^floor(k/2) grid whose mean |point|^2 equals
/// `mean_point_photons`.
Constellation lattice_constellation(int k, double mean_point_photons);

/// Ring encoding of a codeword: ceil(m/k) signals, final block zero-padded.
Amplitudes encode_ring(std::span<const std::uint8_t> codeword, int k, double mu);

/// Lattice encoding; average photon number over grid points times m/k equals mu.
Amplitudes encode_lattice(std::span<const std::uint8_t> codeword, int k, double mu);

struct PhotonRange {
  double min = 0.0;
  double max = 0.0;
};

/// Exact range of total mean photon number over all lattice codewords of length m.
PhotonRange lattice_photon_range(int k, std::int64_t m, double mu);

enum class EdVariant { real, complex_packed };

/// Euclidean-distance encodings. `real` sends s signals u_j*alpha;
/// `complex_packed` sends ceil(s/2) signals (u_j + i u_{j+1}) * alpha.
Amplitudes encode_ed(std::span<const double> u, Complex alpha, EdVariant variant);

/// q_a = sqrt(1 - p/2)|0> + (-1)^a sqrt(p/2)|1>, so <q0|q1> = 1 - p.
std::array<Eigen::Vector2d, 2> interpolation_qubits(double p_k);

/// One interpolation signal (1/sqrt(k)) sum_i |i>|q_{bits_i}>, in C^k (x) C^2
/// with index 2*i + qubit. `block` holds exactly k bits.
Eigen::VectorXcd interpolation_signal(std::span<const std::uint8_t> block, double p_k);

/// Full state (C^k (x) C^2)^{(x) ceil(m/k)} for small instances.
/// Throws std::length_error above `max_dimension`.
Eigen::VectorXcd interpolation_state_vector(std::span<const std::uint8_t> codeword, int k, double p_k,
                                            std::size_t max_dimension = std::size_t{1} << 20);

}  // namespace qfp
