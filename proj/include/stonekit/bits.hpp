#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "stonekit/error.hpp"

namespace stonekit {

/// Subsets of a finite carrier of at most 64 points.
using Mask = std::uint64_t;

inline constexpr std::size_t kMaxPoints = 64;
inline constexpr std::size_t kDefaultDownsetCap = std::size_t{1} << 20;

constexpr Mask bit(std::size_t i) { return Mask{1} << i; }
constexpr bool has(Mask m, std::size_t i) { return (m >> i) & 1u; }
constexpr Mask full_mask(std::size_t n) { return n >= 64 ? ~Mask{0} : bit(n) - 1; }
constexpr bool subset(Mask a, Mask b) { return (a & ~b) == 0; }

template <typename F>
void for_each_bit(Mask m, F&& f) {
  while (m) {
    f(static_cast<std::size_t>(std::countr_zero(m)));
    m &= m - 1;
  }
}

inline std::vector<std::size_t> to_indices(Mask m) {
  std::vector<std::size_t> out;
  for_each_bit(m, [&](std::size_t i) { out.push_back(i); });
  return out;
}

/// Canonical element order: by cardinality, then by mask value.
struct CanonicalLess {
  bool operator()(Mask a, Mask b) const {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  }
};

inline void check_point_count(std::size_t n) {
  if (n > kMaxPoints)
    throw Error(ErrorKind::Size, detail::concat(n, " points exceed the supported maximum of ", kMaxPoints));
}

/// Downset cap: STONEKIT_MAX_DOWNSETS when set to a positive integer, else 2^20.
inline std::size_t downset_cap() {
  if (const char* env = std::getenv("STONEKIT_MAX_DOWNSETS")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultDownsetCap;
}

// Reflexive-transitive closure of a relation given as rows (bit y of row x set
// when x relates to y).
inline void close_preorder(std::vector<Mask>& rows) {
  const std::size_t n = rows.size();
  for (std::size_t x = 0; x < n; ++x) rows[x] |= bit(x);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t x = 0; x < n; ++x)
      if (has(rows[x], k)) rows[x] |= rows[k];
}

inline std::vector<Mask> transpose(const std::vector<Mask>& rows) {
  std::vector<Mask> out(rows.size(), 0);
  for (std::size_t x = 0; x < rows.size(); ++x)
    for_each_bit(rows[x], [&](std::size_t y) { out[y] |= bit(x); });
  return out;
}

}  // namespace stonekit
