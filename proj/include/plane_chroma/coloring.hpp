#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "plane_chroma/error.hpp"
#include "plane_chroma/gf.hpp"
#include "plane_chroma/plane.hpp"

namespace plane_chroma {

using color_id = std::uint32_t;

/// A total map point -> color with contiguous ids 0 .. K-1. Class sizes are
/// derived here and never read from input.
class Coloring {
 public:
  Coloring() = default;

  explicit Coloring(std::vector<color_id> color_of) : color_of_(std::move(color_of)) {
    color_id k = 0;
    for (auto c : color_of_) k = std::max(k, c + 1);
    sizes_.assign(k, 0);
    for (auto c : color_of_) ++sizes_[c];
    for (color_id c = 0; c < k; ++c)
      if (sizes_[c] == 0) fail(errc::invalid_coloring, "color ids are not contiguous: " + std::to_string(c) + " unused");
  }

  /// Relabels arbitrary ids to 0 .. K-1 in order of first appearance.
  static Coloring from_labels(const std::vector<std::uint64_t>& raw) {
    std::map<std::uint64_t, color_id> ids;
    std::vector<color_id> out;
    out.reserve(raw.size());
    for (auto r : raw) out.push_back(ids.try_emplace(r, static_cast<color_id>(ids.size())).first->second);
    return Coloring(std::move(out));
  }

  std::uint32_t num_points() const noexcept { return static_cast<std::uint32_t>(color_of_.size()); }
  std::uint32_t num_colors() const noexcept { return static_cast<std::uint32_t>(sizes_.size()); }
  color_id operator[](point_id pt) const { return color_of_.at(pt); }
  const std::vector<color_id>& colors() const noexcept { return color_of_; }
  const std::vector<std::uint32_t>& class_sizes() const noexcept { return sizes_; }

  std::uint32_t min_class_size() const noexcept {
    return sizes_.empty() ? 0 : *std::min_element(sizes_.begin(), sizes_.end());
  }
  std::uint32_t max_class_size() const noexcept {
    return sizes_.empty() ? 0 : *std::max_element(sizes_.begin(), sizes_.end());
  }

  /// class size -> number of classes of that size
  std::map<std::uint32_t, std::uint32_t> histogram() const {
    std::map<std::uint32_t, std::uint32_t> h;
    for (auto s : sizes_) ++h[s];
    return h;
  }

  std::vector<std::vector<point_id>> classes() const {
    std::vector<std::vector<point_id>> out(num_colors());
    for (point_id pt = 0; pt < num_points(); ++pt) out[color_of_[pt]].push_back(pt);
    return out;
  }

  friend bool operator==(const Coloring& a, const Coloring& b) { return a.color_of_ == b.color_of_; }

 private:
  std::vector<color_id> color_of_;
  std::vector<std::uint32_t> sizes_;
};

struct Verdict {
  bool balanced = false;
  bool rainbow_free = false;
  std::vector<line_id> rainbow_lines;
  std::uint32_t num_colors = 0;
  std::uint32_t min_class_size = 0;
  std::uint32_t max_class_size = 0;

  bool ok() const noexcept { return balanced && rainbow_free; }
};

/// A line is rainbow iff its points carry pairwise distinct colors.
inline Verdict verify(const ProjectivePlane& plane, const Coloring& coloring) {
  if (coloring.num_points() != plane.num_points())
    fail(errc::domain_mismatch, "coloring has " + std::to_string(coloring.num_points()) + " points, plane has " +
                                    std::to_string(plane.num_points()));
  Verdict v;
  v.num_colors = coloring.num_colors();
  v.min_class_size = coloring.min_class_size();
  v.max_class_size = coloring.max_class_size();
  v.balanced = v.max_class_size - v.min_class_size <= 1;
  std::vector<line_id> stamp(coloring.num_colors(), 0);
  for (line_id l = 0; l < plane.num_lines(); ++l) {
    const line_id tag = l + 1;
    bool repeated = false;
    for (auto pt : plane.line(l)) {
      auto& s = stamp[coloring[pt]];
      if (s == tag) {
        repeated = true;
        break;
      }
      s = tag;
    }
    if (!repeated) v.rainbow_lines.push_back(l);
  }
  v.rainbow_free = v.rainbow_lines.empty();
  return v;
}

/// Rainbow lines among a subset of lines (e.g. only the affine lines).
inline std::vector<line_id> rainbow_lines_among(const ProjectivePlane& plane, const std::vector<color_id>& colors,
                                                const std::vector<line_id>& which) {
  std::vector<line_id> out;
  for (auto l : which) {
    std::vector<color_id> seen;
    for (auto pt : plane.line(l)) seen.push_back(colors.at(pt));
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) == seen.end()) out.push_back(l);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bound formulas

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t n, std::int64_t d) {
    if (d == 0) fail(errc::division_by_zero, "zero denominator");
    if (d < 0) n = -n, d = -d;
    const auto g = std::gcd(n, d);
    return {n / (g ? g : 1), d / (g ? g : 1)};
  }
  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

  friend bool operator==(const Rational&, const Rational&) = default;
};

/// floor((q^2+q+1)/3): every class of a rainbow-free coloring has >= 3 points.
inline std::int64_t upper_bound(std::int64_t q) { return (q * q + q + 1) / 3; }

/// (q^2+q+1)/6, the general lower bound for cyclic planes.
inline Rational lower_bound_cyclic(std::int64_t q) { return Rational::make(q * q + q + 1, 6); }

enum class Family {
  proposition,      // cyclic planes from a difference set containing {0,1,3}
  affine_ds,        // q = 2 mod 3, plane from an affine difference set
  planar_char3,     // q = 0 mod 3, planar-function plane
  planar_affine,    // p > 5, affine plane part of the grid construction
  planar_projective,
  randomized,       // any plane, q > 133
  remark,           // any plane, 11 <= q <= 133, classes of size 11 and 12
};

inline std::string_view to_string(Family f) noexcept {
  switch (f) {
    case Family::proposition: return "proposition";
    case Family::affine_ds: return "affine-ds";
    case Family::planar_char3: return "planar-char3";
    case Family::planar_affine: return "planar-affine";
    case Family::planar_projective: return "planar-projective";
    case Family::randomized: return "randomized";
    case Family::remark: return "remark";
  }
  return "unknown";
}

inline const std::vector<Family>& all_families() {
  static const std::vector<Family> all{Family::proposition,     Family::affine_ds,  Family::planar_char3,
                                       Family::planar_affine,   Family::planar_projective,
                                       Family::randomized,      Family::remark};
  return all;
}

/// Whether q satisfies the family's hypothesis.
inline bool in_hypothesis(std::int64_t q, Family family) {
  if (q < 2) return false;
  const auto pp = gf::as_prime_power(static_cast<std::uint64_t>(q));
  switch (family) {
    case Family::proposition: return pp.has_value();
    case Family::affine_ds: return pp.has_value() && q % 3 == 2;
    case Family::planar_char3: return pp.has_value() && pp->p == 3;
    case Family::planar_affine:
    case Family::planar_projective: return pp.has_value() && pp->p > 5;
    case Family::randomized: return q > 133;
    case Family::remark: return q >= 11 && q <= 133;
  }
  return false;
}

/// The lower bound value each family guarantees (exact where it is exact).
inline std::int64_t theorem_bounds(std::int64_t q, Family family) {
  if (!in_hypothesis(q, family))
    fail(errc::out_of_hypothesis, "q=" + std::to_string(q) + " is outside the hypothesis of " +
                                      std::string(to_string(family)));
  const std::int64_t q2 = q * q;
  switch (family) {
    case Family::proposition: return upper_bound(q);
    case Family::affine_ds: return (q2 + 2) / 3;
    case Family::planar_char3: return (q2 + q) / 3;
    case Family::planar_affine: {
      const auto p = static_cast<std::int64_t>(gf::as_prime_power(q)->p);
      return p % 3 == 1 ? (q2 - q2 / p) / 3 : (q2 - 2 * q2 / p) / 3;
    }
    case Family::planar_projective: {
      const auto pp = *gf::as_prime_power(q);
      const auto p = static_cast<std::int64_t>(pp.p);
      if (p % 3 == 1) return (q2 + q - 1 - q2 / p) / 3;
      if (pp.h % 2 == 1) return (q2 + q + 1 - 2 * q2 / p) / 3;
      return (q2 + q - 1 - 2 * q2 / p) / 3;
    }
    case Family::randomized: return (q2 + q - 16) / 10;
    case Family::remark: return (q2 + q - 18) / 11;
  }
  return 0;
}

}  // namespace plane_chroma
