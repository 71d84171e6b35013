#include "qfp/codes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qfp {

void CodeSpec::validate() const {
  if (n < 1) throw std::invalid_argument("CodeSpec: n must be >= 1");
  if (q < 2) throw std::invalid_argument("CodeSpec: q must be >= 2");
  if (!(delta >= 0.0 && delta < 1.0 - 1.0 / q))
    throw std::invalid_argument("CodeSpec: delta must satisfy 0 <= delta < 1 - 1/q");
  if (q == 2 && delta > 0.0 && m < n)
    throw std::invalid_argument("CodeSpec: binary code with delta > 0 needs m >= n");
}

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("binary_entropy: x outside [0,1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double qary_gv_rate(double delta_q, int q) {
  if (q < 2) throw std::invalid_argument("qary_gv_rate: q must be >= 2");
  if (!(delta_q >= 0.0 && delta_q < 1.0 - 1.0 / q))
    throw std::domain_error("qary_gv_rate: delta_q must satisfy 0 <= delta_q < 1 - 1/q");
  return std::log2(static_cast<double>(q)) - delta_q * std::log2(static_cast<double>(q - 1)) -
         binary_entropy(delta_q);
}

namespace {

// Smallest integer m >= 1 with n / m <= rate.
std::int64_t smallest_length(std::int64_t n, double rate) {
  if (!(rate > 0.0)) throw std::domain_error("GV rate is not positive; no finite length");
  const double guess = std::ceil(static_cast<double>(n) / rate);
  if (guess > static_cast<double>(std::numeric_limits<std::int64_t>::max() / 2))
    throw std::overflow_error("GV length overflows int64");
  auto m = std::max<std::int64_t>(1, static_cast<std::int64_t>(guess));
  auto ok = [&](std::int64_t len) { return static_cast<double>(n) / static_cast<double>(len) <= rate; };
  while (m > 1 && ok(m - 1)) --m;
  while (!ok(m)) ++m;
  return m;
}

}  // namespace

std::int64_t gv_binary_length(std::int64_t n, double delta) {
  if (n < 1) throw std::invalid_argument("gv_binary_length: n must be >= 1");
  if (!(delta >= 0.0 && delta < 0.5))
    throw std::domain_error("gv_binary_length: delta must satisfy 0 <= delta < 1/2");
  return smallest_length(n, 1.0 - binary_entropy(delta));
}

std::int64_t gv_qary_length(std::int64_t n, double delta_q, int q) {
  if (n < 1) throw std::invalid_argument("gv_qary_length: n must be >= 1");
  return smallest_length(n, qary_gv_rate(delta_q, q));
}

std::uint32_t gray_encode(std::uint32_t v) noexcept { return v ^ (v >> 1); }

std::uint32_t gray_decode(std::uint32_t g) noexcept {
  std::uint32_t v = g;
  for (std::uint32_t shift = 1; shift < 32; shift <<= 1) v ^= v >> shift;
  return v;
}

GrayMap::GrayMap(int k, Geometry g, int rows, int cols)
    : k_(k), geometry_(g), rows_(rows), cols_(cols) {
  const std::size_t count = std::size_t{1} << k;
  label_at_.resize(count);
  position_of_.resize(count);
}

GrayMap GrayMap::ring(int k) {
  if (k < 1 || k > 24) throw std::invalid_argument("ring_gray: k must lie in [1, 24]");
  GrayMap map(k, Geometry::ring, 1, 1 << k);
  for (std::size_t pos = 0; pos < map.size(); ++pos) {
    const auto label = gray_encode(static_cast<std::uint32_t>(pos));
    map.label_at_[pos] = label;
    map.position_of_[label] = pos;
  }
  return map;
}

GrayMap GrayMap::lattice(int k) {
  if (k < 2 || k > 24) throw std::invalid_argument("lattice_gray: k must lie in [2, 24]");
  const int row_bits = (k + 1) / 2;
  const int col_bits = k / 2;
  GrayMap map(k, Geometry::lattice, 1 << row_bits, 1 << col_bits);
  for (int r = 0; r < map.rows_; ++r) {
    for (int c = 0; c < map.cols_; ++c) {
      const std::size_t pos = static_cast<std::size_t>(r) * map.cols_ + c;
      const auto label = (gray_encode(static_cast<std::uint32_t>(r)) << col_bits) |
                         gray_encode(static_cast<std::uint32_t>(c));
      map.label_at_[pos] = label;
      map.position_of_[label] = pos;
    }
  }
  return map;
}

GrayMap ring_gray(int k) { return GrayMap::ring(k); }
GrayMap lattice_gray(int k) { return GrayMap::lattice(k); }

std::complex<double> GrayMap::unit_point(std::uint32_t label) const {
  const std::size_t pos = position_of(label);
  if (geometry_ == Geometry::ring) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(pos) / static_cast<double>(size());
    return std::polar(1.0, angle);
  }
  const auto r = static_cast<double>(pos / cols_);
  const auto c = static_cast<double>(pos % cols_);
  return {c - 0.5 * (cols_ - 1), r - 0.5 * (rows_ - 1)};
}

std::vector<std::pair<std::size_t, std::size_t>> GrayMap::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (geometry_ == Geometry::ring) {
    if (size() == 2) {
      out.emplace_back(0, 1);
      return out;
    }
    for (std::size_t p = 0; p < size(); ++p) out.emplace_back(p, (p + 1) % size());
    return out;
  }
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) {
      const std::size_t p = static_cast<std::size_t>(r) * cols_ + c;
      if (c + 1 < cols_) out.emplace_back(p, p + 1);
      if (r + 1 < rows_) out.emplace_back(p, p + cols_);
    }
  }
  return out;
}

std::uint32_t block_label(std::span<const std::uint8_t> bits, std::size_t block, int k) {
  std::uint32_t label = 0;
  const std::size_t start = block * static_cast<std::size_t>(k);
  for (int i = 0; i < k; ++i) {
    const std::size_t idx = start + static_cast<std::size_t>(i);
    const std::uint32_t bit = idx < bits.size() ? (bits[idx] & 1u) : 0u;
    label = (label << 1) | bit;
  }
  return label;
}

std::size_t hamming_distance(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  if (a.size() != b.size()) throw std::invalid_argument("hamming_distance: length mismatch");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] != b[i]) ? 1 : 0;
  return d;
}

std::vector<int> block_histogram(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y,
                                 int k) {
  if (x.size() != y.size()) throw std::invalid_argument("block_histogram: length mismatch");
  if (k < 1) throw std::invalid_argument("block_histogram: k must be >= 1");
  const std::size_t blocks = (x.size() + k - 1) / k;
  std::vector<int> hist(blocks, 0);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != y[i]) ++hist[i / k];
  return hist;
}

LabelPair closest_label_pair(const GrayMap& map, int c, std::uint32_t pad_mask) {
  LabelPair best;
  double best_d2 = std::numeric_limits<double>::infinity();
  const auto count = static_cast<std::uint32_t>(map.size());
  for (std::uint32_t a = 0; a < count; ++a) {
    if (a & pad_mask) continue;
    for (std::uint32_t b = 0; b < count; ++b) {
      if ((b & pad_mask) || std::popcount(a ^ b) != c) continue;
      const double d2 = std::norm(map.unit_point(a) - map.unit_point(b));
      if (d2 < best_d2 - 1e-12) {
        best_d2 = d2;
        best = {a, b};
      }
    }
  }
  if (!std::isfinite(best_d2))
    throw std::invalid_argument("closest_label_pair: no label pair at Hamming distance " + std::to_string(c));
  return best;
}

namespace {

void write_label(Bits& bits, std::size_t start, std::size_t len, int k, std::uint32_t label) {
  for (std::size_t i = 0; i < len; ++i) bits[start + i] = (label >> (k - 1 - static_cast<int>(i))) & 1u;
}

}  // namespace

CodewordPair worst_case_pair(std::size_t m, double delta, int k, PairStrategy strategy,
                             const GrayMap* geometry) {
  if (k < 1) throw std::invalid_argument("worst_case_pair: k must be >= 1");
  if (geometry != nullptr && geometry->k() != k)
    throw std::invalid_argument("worst_case_pair: geometry block size differs from k");
  const double target = std::round(static_cast<double>(m) * delta);
  if (!(target >= 0.0 && target <= static_cast<double>(m)))
    throw std::invalid_argument("worst_case_pair: round(m*delta) must lie in [0, m]");
  auto remaining = static_cast<std::size_t>(target);

  const std::size_t kk = static_cast<std::size_t>(k);
  const std::size_t blocks = (m + kk - 1) / kk;
  std::vector<std::size_t> length(blocks), count(blocks, 0);
  for (std::size_t b = 0; b < blocks; ++b) length[b] = std::min(kk, m - b * kk);

  if (strategy == PairStrategy::consolidated) {
    for (std::size_t b = 0; b < blocks && remaining > 0; ++b) {
      count[b] = std::min(length[b], remaining);
      remaining -= count[b];
    }
  } else {
    for (std::size_t layer = 0; layer < kk && remaining > 0; ++layer) {
      for (std::size_t b = 0; b < blocks && remaining > 0; ++b) {
        if (length[b] > layer) {
          ++count[b];
          --remaining;
        }
      }
    }
  }

  CodewordPair pair{Bits(m, 0), Bits(m, 0)};
  std::map<std::pair<std::size_t, std::uint32_t>, LabelPair> cache;
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t start = b * kk;
    if (geometry == nullptr) {
      for (std::size_t i = 0; i < count[b]; ++i) pair.y[start + i] = 1;
      continue;
    }
    const std::uint32_t pad_mask = (std::uint32_t{1} << (kk - length[b])) - 1u;
    const auto key = std::make_pair(count[b], pad_mask);
    auto it = cache.find(key);
    if (it == cache.end())
      it = cache.emplace(key, closest_label_pair(*geometry, static_cast<int>(count[b]), pad_mask)).first;
    const LabelPair lp = it->second;
    write_label(pair.x, start, length[b], k, lp.a);
    write_label(pair.y, start, length[b], k, lp.b);
  }
  return pair;
}

}  // namespace qfp
