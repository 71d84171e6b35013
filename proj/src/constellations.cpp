#include "qfp/constellations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qfp {

std::string_view to_string(Family f) noexcept {
  switch (f) {
    case Family::interpolation: return "interpolation";
    case Family::ring: return "ring";
    case Family::lattice: return "lattice";
    case Family::qary_ring: return "qary_ring";
    case Family::ed_real: return "ed_real";
    case Family::ed_complex: return "ed_complex";
  }
  return "unknown";
}

Family family_from_string(std::string_view name) {
  for (Family f : {Family::interpolation, Family::ring, Family::lattice, Family::qary_ring,
                   Family::ed_real, Family::ed_complex})
    if (to_string(f) == name) return f;
  throw std::invalid_argument("unknown protocol family '" + std::string(name) + "'");
}

std::int64_t ProtocolInstance::signal_count() const {
  switch (family) {
    case Family::ed_real: return s;
    case Family::ed_complex: return (s + 1) / 2;
    case Family::interpolation: return r * ((m + k - 1) / k);
    default: return (m + k - 1) / k;
  }
}

void ProtocolInstance::validate() const {
  if (k < 1) throw std::invalid_argument("ProtocolInstance: k must be >= 1");
  switch (family) {
    case Family::ed_real:
    case Family::ed_complex:
      if (s < 1) throw std::invalid_argument("ProtocolInstance: ED dimension s must be >= 1");
      return;
    case Family::interpolation:
      if (m < 1) throw std::invalid_argument("ProtocolInstance: m must be >= 1");
      if (!(p_k > 0.0 && p_k <= 1.0)) throw std::invalid_argument("ProtocolInstance: p_k must lie in (0, 1]");
      if (r < 1) throw std::invalid_argument("ProtocolInstance: r must be >= 1");
      return;
    default:
      if (m < 1) throw std::invalid_argument("ProtocolInstance: m must be >= 1");
      if (!(mu >= 0.0)) throw std::invalid_argument("ProtocolInstance: mu must be >= 0");
      if (!(delta >= 0.0 && delta < 1.0)) throw std::invalid_argument("ProtocolInstance: delta must lie in [0, 1)");
  }
}

double ring_amplitude(int k, std::int64_t m, double mu) {
  if (k < 1 || m < 1) throw std::invalid_argument("ring_amplitude: k and m must be >= 1");
  if (!(mu >= 0.0)) throw std::invalid_argument("ring_amplitude: mu must be >= 0");
  return std::sqrt(mu / (static_cast<double>(m) / k));
}

Constellation ring_constellation(int k, double beta) {
  Constellation c{{}, GrayMap::ring(k)};
  c.points.resize(c.labels.size());
  for (std::uint32_t label = 0; label < c.points.size(); ++label) c.points[label] = beta * c.labels.unit_point(label);
  return c;
}

namespace {

// Mean |point|^2 of the unit-spacing centred grid.
double unit_grid_mean_norm(const GrayMap& map) {
  const double r = map.rows();
  const double c = map.cols();
  return ((r * r - 1.0) + (c * c - 1.0)) / 12.0;
}

Amplitudes encode_blocks(std::span<const std::uint8_t> codeword, const Constellation& c, int k) {
  if (codeword.empty()) throw std::invalid_argument("encode: empty codeword");
  const std::size_t blocks = (codeword.size() + k - 1) / k;
  Amplitudes out(blocks);
  for (std::size_t j = 0; j < blocks; ++j) out[j] = c.points[block_label(codeword, j, k)];
  return out;
}

}  // namespace

Constellation lattice_constellation(int k, double mean_point_photons) {
  if (!(mean_point_photons >= 0.0)) throw std::invalid_argument("lattice_constellation: photons must be >= 0");
  Constellation c{{}, GrayMap::lattice(k)};
  const double spacing = std::sqrt(mean_point_photons / unit_grid_mean_norm(c.labels));
  c.points.resize(c.labels.size());
  for (std::uint32_t label = 0; label < c.points.size(); ++label)
    c.points[label] = spacing * c.labels.unit_point(label);
  return c;
}

Amplitudes encode_ring(std::span<const std::uint8_t> codeword, int k, double mu) {
  if (codeword.empty()) throw std::invalid_argument("encode_ring: empty codeword");
  const double beta = ring_amplitude(k, static_cast<std::int64_t>(codeword.size()), mu);
  return encode_blocks(codeword, ring_constellation(k, beta), k);
}

Amplitudes encode_lattice(std::span<const std::uint8_t> codeword, int k, double mu) {
  if (codeword.empty()) throw std::invalid_argument("encode_lattice: empty codeword");
  const double beta = ring_amplitude(k, static_cast<std::int64_t>(codeword.size()), mu);
  return encode_blocks(codeword, lattice_constellation(k, beta * beta), k);
}

PhotonRange lattice_photon_range(int k, std::int64_t m, double mu) {
  const double beta = ring_amplitude(k, m, mu);
  const Constellation c = lattice_constellation(k, beta * beta);
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const auto& p : c.points) {
    lo = std::min(lo, std::norm(p));
    hi = std::max(hi, std::norm(p));
  }
  // The zero-padded final block can still sit on any grid point with a
  // zero-padded label, so bracket it by the same extremes.
  const auto signals = static_cast<double>((m + k - 1) / k);
  return {signals * lo, signals * hi};
}

Amplitudes encode_ed(std::span<const double> u, Complex alpha, EdVariant variant) {
  if (u.empty()) throw std::invalid_argument("encode_ed: empty vector");
  double norm2 = 0.0;
  for (double x : u) norm2 += x * x;
  if (std::abs(std::sqrt(norm2) - 1.0) > 1e-9) throw std::invalid_argument("encode_ed: input vector is not unit norm");
  Amplitudes out;
  if (variant == EdVariant::real) {
    out.reserve(u.size());
    for (double x : u) out.push_back(x * alpha);
    return out;
  }
  out.reserve((u.size() + 1) / 2);
  for (std::size_t j = 0; j < u.size(); j += 2) {
    const double im = j + 1 < u.size() ? u[j + 1] : 0.0;
    out.push_back(Complex(u[j], im) * alpha);
  }
  return out;
}

std::array<Eigen::Vector2d, 2> interpolation_qubits(double p_k) {
  if (!(p_k >= 0.0 && p_k <= 1.0)) throw std::invalid_argument("interpolation_qubits: p_k must lie in [0, 1]");
  const double c0 = std::sqrt(1.0 - 0.5 * p_k);
  const double c1 = std::sqrt(0.5 * p_k);
  return {Eigen::Vector2d(c0, c1), Eigen::Vector2d(c0, -c1)};
}

Eigen::VectorXcd interpolation_signal(std::span<const std::uint8_t> block, double p_k) {
  const auto q = interpolation_qubits(p_k);
  const auto k = static_cast<Eigen::Index>(block.size());
  if (k == 0) throw std::invalid_argument("interpolation_signal: empty block");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * k);
  const double scale = 1.0 / std::sqrt(static_cast<double>(k));
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto& qi = q[block[static_cast<std::size_t>(i)] & 1u];
    v(2 * i) = scale * qi(0);
    v(2 * i + 1) = scale * qi(1);
  }
  return v;
}

Eigen::VectorXcd interpolation_state_vector(std::span<const std::uint8_t> codeword, int k, double p_k,
                                            std::size_t max_dimension) {
  if (k < 1) throw std::invalid_argument("interpolation_state_vector: k must be >= 1");
  if (codeword.empty()) throw std::invalid_argument("interpolation_state_vector: empty codeword");
  if (!(p_k > 0.0 && p_k <= 1.0)) throw std::invalid_argument("interpolation_state_vector: p_k must lie in (0, 1]");
  const std::size_t blocks = (codeword.size() + k - 1) / k;
  const auto kk = static_cast<std::size_t>(k);
  double dim = 1.0;
  for (std::size_t j = 0; j < blocks; ++j) dim *= 2.0 * k;
  if (dim > static_cast<double>(max_dimension))
    throw std::length_error("interpolation_state_vector: dimension " + std::to_string(dim) + " exceeds cap");

  Eigen::VectorXcd state = Eigen::VectorXcd::Ones(1);
  std::vector<std::uint8_t> block(kk);
  for (std::size_t j = 0; j < blocks; ++j) {
    for (std::size_t i = 0; i < kk; ++i) {
      const std::size_t idx = j * kk + i;
      block[i] = idx < codeword.size() ? codeword[idx] : 0;
    }
    const Eigen::VectorXcd sig = interpolation_signal(block, p_k);
    Eigen::VectorXcd next(state.size() * sig.size());
    for (Eigen::Index a = 0; a < state.size(); ++a) next.segment(a * sig.size(), sig.size()) = state(a) * sig;
    state = std::move(next);
  }
  return state;
}

}  // namespace qfp
