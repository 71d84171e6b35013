#pragma once

// Code-level primitives: entropy functions, Gilbert-Varshamov length solvers,
// Gray labellings of rings and lattices, and adversarial codeword pairs.

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace qfp {

using Bits = std::vector<std::uint8_t>;

/// Abstract code parameters. Only the minimum distance is characterized.
struct CodeSpec {
  std::int64_t n = 0;  // input length in bits
  std::int64_t m = 0;  // codeword length in codeletters
  double delta = 0.0;  // relative minimum distance
  int q = 2;           // alphabet size

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;
};

/// h(x) in bits with h(0) = h(1) = 0. Throws std::domain_error outside [0,1].
double binary_entropy(double x);

/// Right-hand side of the q-ary GV relation: log2 q - d log2(q-1) - h(d).
double qary_gv_rate(double delta_q, int q);

/// Smallest m with n/m <= 1 - h(delta).
std::int64_t gv_binary_length(std::int64_t n, double delta);

/// Smallest m_q with n/m_q <= log2 q - delta_q log2(q-1) - h(delta_q).
std::int64_t gv_qary_length(std::int64_t n, double delta_q, int q);

enum class Geometry { ring, lattice };

/// Bijection between k-bit labels and constellation positions such that
/// geometrically adjacent positions carry labels one bit apart.
///
/// Labels are read most-significant-bit first from a block of codeword
/// bits. Ring positions run 0..2^k-1 counter-clockwise from the positive
/// real axis. Lattice positions are row-major on a 2^ceil(k/2) x
/// 2^floor(k/2) grid.
class GrayMap {
 public:
  static GrayMap ring(int k);
  static GrayMap lattice(int k);

  int k() const noexcept { return k_; }
  Geometry geometry() const noexcept { return geometry_; }
  std::size_t size() const noexcept { return label_at_.size(); }
  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  std::size_t position_of(std::uint32_t label) const { return position_of_.at(label); }
  std::uint32_t label_at(std::size_t position) const { return label_at_.at(position); }

  /// Point for `label` in unit geometry: ring points lie on the unit circle,
  /// lattice points on a centred grid with unit spacing.
  std::complex<double> unit_point(std::uint32_t label) const;

  /// Adjacent position pairs (ring: cyclic neighbours, lattice: 4-neighbourhood).
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

 private:
  GrayMap(int k, Geometry g, int rows, int cols);

  int k_;
  Geometry geometry_;
  int rows_;
  int cols_;
  std::vector<std::uint32_t> label_at_;
  std::vector<std::size_t> position_of_;
};

GrayMap ring_gray(int k);
GrayMap lattice_gray(int k);

std::uint32_t gray_encode(std::uint32_t v) noexcept;
std::uint32_t gray_decode(std::uint32_t g) noexcept;

/// Label of block `block` of k bits, MSB first; bits past the end read as 0.
std::uint32_t block_label(std::span<const std::uint8_t> bits, std::size_t block, int k);

std::size_t hamming_distance(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

struct LabelPair {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
};

/// Closest pair of unit points whose labels differ in exactly `c` bits,
/// restricted to labels that are zero on `pad_mask`. Ties resolve to the
/// lexicographically smallest (a, b).
LabelPair closest_label_pair(const GrayMap& map, int c, std::uint32_t pad_mask = 0);

enum class PairStrategy { consolidated, even };

struct CodewordPair {
  Bits x;
  Bits y;
};

/// Two length-m strings differing in exactly round(m*delta) positions.
///
/// `consolidated` packs the differences into the fewest k-bit blocks;
/// `even` spreads them so block difference counts differ by at most one.
/// Without a geometry, x is all zeros and differences occupy the leading
/// bits of each block. With a geometry, every block pair with c differences
/// is the closest pair of constellation points whose labels are c bits apart.
CodewordPair worst_case_pair(std::size_t m, double delta, int k, PairStrategy strategy,
                             const GrayMap* geometry = nullptr);

/// Difference count per k-bit block (the last block may be short).
std::vector<int> block_histogram(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y,
                                 int k);

}  // namespace qfp
