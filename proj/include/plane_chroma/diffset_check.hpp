#pragma once

// Exact certification of (planar and affine) difference sets in Z_v.

#include <cstdint>
#include <span>
#include <vector>

namespace plane_chroma::search {

/// True iff every nonzero residue mod v is d1 - d2 for exactly one ordered
/// pair of elements of D.
inline bool is_planar_difference_set(std::span<const std::uint32_t> D, std::uint32_t v) {
  if (v < 2) return false;
  std::vector<std::uint32_t> hits(v, 0);
  for (auto a : D) {
    if (a >= v) return false;
    for (auto b : D) {
      if (a == b) continue;
      auto& h = hits[(a + v - b) % v];
      if (++h > 1) return false;
    }
  }
  for (std::uint32_t r = 1; r < v; ++r)
    if (hits[r] != 1) return false;
  return hits[0] == 0;
}

/// True iff the distinct differences of D are each hit once and together are
/// exactly Z_v minus the subgroup N.
inline bool is_affine_difference_set(std::span<const std::uint32_t> D, std::uint32_t v,
                                     std::span<const std::uint32_t> N) {
  if (v < 2) return false;
  std::vector<char> in_n(v, 0);
  for (auto n : N) {
    if (n >= v) return false;
    in_n[n] = 1;
  }
  // N must be a subgroup: contains 0 and is closed under subtraction.
  if (!in_n[0]) return false;
  for (auto a : N)
    for (auto b : N)
      if (!in_n[(a + v - b) % v]) return false;
  std::vector<std::uint32_t> hits(v, 0);
  std::vector<char> seen(v, 0);
  for (auto a : D) {
    if (a >= v || seen[a]) return false;
    seen[a] = 1;
  }
  for (auto a : D)
    for (auto b : D) {
      if (a == b) continue;
      const std::uint32_t d = (a + v - b) % v;
      if (in_n[d] || ++hits[d] > 1) return false;
    }
  for (std::uint32_t r = 0; r < v; ++r)
    if (!in_n[r] && hits[r] != 1) return false;
  return true;
}

}  // namespace plane_chroma::search
