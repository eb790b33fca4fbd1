#pragma once

// Deterministic balanced rainbow-free colorings for cyclic planes,
// affine-difference-set planes and planar-function planes, plus the
// printed 5x5 tables.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "plane_chroma/coloring.hpp"
#include "plane_chroma/error.hpp"
#include "plane_chroma/gf.hpp"
#include "plane_chroma/matching.hpp"
#include "plane_chroma/plane.hpp"

namespace plane_chroma {

// ---------------------------------------------------------------------------
// Cyclic planes

/// True iff x -> x+1 (mod v) maps lines to lines.
inline bool is_cyclic(const ProjectivePlane& plane) {
  const std::uint32_t v = plane.num_points();
  if (v == 0 || plane.num_lines() != v) return false;
  std::set<std::vector<point_id>> lines(plane.lines().begin(), plane.lines().end());
  for (const auto& line : plane.lines()) {
    std::vector<point_id> shifted;
    shifted.reserve(line.size());
    for (auto pt : line) shifted.push_back((pt + 1) % v);
    std::sort(shifted.begin(), shifted.end());
    if (!lines.count(shifted)) return false;
  }
  return true;
}

inline bool has_line_containing(const ProjectivePlane& plane, std::initializer_list<point_id> pts) {
  return std::any_of(plane.lines().begin(), plane.lines().end(), [&](const auto& line) {
    return std::all_of(pts.begin(), pts.end(), [&](point_id pt) { return std::binary_search(line.begin(), line.end(), pt); });
  });
}

/// Consecutive residues in blocks of three; the first block takes a fourth
/// point when 3 does not divide v.
inline Coloring color_consecutive_triples(const ProjectivePlane& plane) {
  const std::uint32_t v = plane.num_points();
  if (!is_cyclic(plane)) fail(errc::precondition_failed, "plane is not cyclic under x -> x+1");
  if (!has_line_containing(plane, {0, 1, 3})) fail(errc::precondition_failed, "no line contains {0, 1, 3}");
  std::vector<color_id> colors(v);
  const bool extra = v % 3 != 0;
  for (std::uint32_t i = 0; i < v; ++i) colors[i] = extra ? (i < 4 ? 0 : (i - 1) / 3) : i / 3;
  return Coloring(std::move(colors));
}

/// Classes {i, i + v/3, i + 2v/3}.
inline Coloring color_third_cosets(const ProjectivePlane& plane) {
  const std::uint32_t v = plane.num_points();
  if (v % 3 != 0) fail(errc::out_of_hypothesis, "v = " + std::to_string(v) + " is not divisible by 3");
  if (!is_cyclic(plane)) fail(errc::precondition_failed, "plane is not cyclic under x -> x+1");
  std::vector<color_id> colors(v);
  for (std::uint32_t i = 0; i < v; ++i) colors[i] = i % (v / 3);
  return Coloring(std::move(colors));
}

// ---------------------------------------------------------------------------
// Affine difference set planes (q = 2 mod 3)

inline Coloring color_affine_ds(const ProjectivePlane& plane) {
  const std::uint32_t q = plane.order();
  if (q % 3 != 2) fail(errc::out_of_hypothesis, "q = " + std::to_string(q) + " is not 2 mod 3");
  const AffineDsLayout layout = affine_ds_layout(plane);
  const std::uint32_t v = q * q - 1;
  const std::uint32_t t = v / 3;
  constexpr color_id unset = Matching::unmatched;

  std::vector<color_id> colors(plane.num_points(), unset);
  for (point_id g = 0; g < v; ++g) colors[g] = g % t;
  const color_id origin_color = t;
  colors[layout.origin] = origin_color;
  for (int i = 0; i < 3; ++i) colors[layout.ideal_points[i]] = origin_color;

  std::vector<line_id> line_of_ideal(plane.num_points(), 0);
  for (auto l : layout.lines_through_origin)
    for (auto pt : plane.line(l))
      if (pt >= q * q) line_of_ideal[pt] = l;

  // Greedy: first color on OP (ascending point order) not yet taken by
  // another ideal point.
  std::vector<char> taken(t, 0);
  bool stuck = false;
  for (std::size_t i = 3; i < layout.ideal_points.size(); ++i) {
    const point_id ideal = layout.ideal_points[i];
    for (auto pt : plane.line(line_of_ideal[ideal])) {
      if (pt >= v) continue;
      if (!taken[colors[pt]]) {
        taken[colors[pt]] = 1;
        colors[ideal] = colors[pt];
        break;
      }
    }
    if (colors[ideal] == unset) {
      stuck = true;
      break;
    }
  }
  if (stuck) {
    // Matching over (remaining ideal points) x (coset colors on their line).
    const auto n = static_cast<std::uint32_t>(layout.ideal_points.size() - 3);
    std::vector<std::vector<std::uint32_t>> adj(n);
    for (std::uint32_t i = 0; i < n; ++i)
      for (auto pt : plane.line(line_of_ideal[layout.ideal_points[i + 3]]))
        if (pt < v) adj[i].push_back(colors[pt]);
    const auto m = max_bipartite_matching(n, t, adj);
    if (!m.saturates_left()) fail(errc::construction_failed, "ideal points cannot be absorbed into distinct classes");
    for (std::uint32_t i = 0; i < n; ++i) colors[layout.ideal_points[i + 3]] = m.left_to_right[i];
  }
  return Coloring(std::move(colors));
}

// ---------------------------------------------------------------------------
// Planar functions, q = 3^h

/// Stripe j covers the columns with codes 3j, 3j+1, 3j+2, i.e. the coset of
/// the prime subfield whose first element in code order is x_j = 3j.
struct StripeDecomposition {
  std::vector<gf::FieldElement> representatives;

  static StripeDecomposition of(const gf::Field& field) {
    if (field.p() != 3) fail(errc::out_of_hypothesis, "stripes need characteristic 3");
    StripeDecomposition s;
    for (std::uint32_t c = 0; c < field.order(); c += 3) s.representatives.push_back({c});
    return s;
  }
};

inline Coloring color_planar_char3(const PlanarPlaneAtlas& atlas) {
  const gf::Field& F = atlas.field();
  const std::uint32_t q = F.order();
  if (q % 3 != 0) fail(errc::out_of_hypothesis, "q = " + std::to_string(q) + " is not 0 mod 3");
  const auto stripes = StripeDecomposition::of(F);
  constexpr color_id unset = Matching::unmatched;
  std::vector<color_id> colors(atlas.plane().num_points(), unset);
  color_id next = 0;
  const auto y0 = F.zero(), y1 = F.one();

  for (std::size_t j = 0; j < stripes.representatives.size(); ++j) {
    const auto x = stripes.representatives[j];
    const std::array<gf::FieldElement, 3> cols{F.sub(x, F.one()), x, F.add(x, F.one())};
    for (std::uint32_t y = 0; y < q; ++y) {
      if (j > 0 && y < 2) continue;  // replaced by the alpha/beta/gamma classes below
      for (auto c : cols) colors[atlas.affine_point(c, {y})] = next;
      if (j == 0 && y == 0) colors[atlas.vertical_ideal()] = next;
      ++next;
    }
    const std::array<point_id, 3> ideal{
        atlas.ideal_point_of(atlas.line_through(atlas.affine_point(cols[0], y0), atlas.affine_point(cols[1], y0))),
        atlas.ideal_point_of(atlas.line_through(atlas.affine_point(cols[1], y0), atlas.affine_point(cols[2], y0))),
        atlas.ideal_point_of(atlas.line_through(atlas.affine_point(cols[0], y0), atlas.affine_point(cols[2], y0)))};
    if (j == 0) {
      for (auto pt : ideal) {
        if (colors[pt] != unset) fail(errc::construction_failed, "ideal point coloured twice");
        colors[pt] = unset - 1;  // placeholder for the final class
      }
      continue;
    }
    for (int i = 0; i < 3; ++i) {
      for (auto pt : {atlas.affine_point(cols[i], y0), atlas.affine_point(cols[i], y1), ideal[i]}) {
        if (colors[pt] != unset) fail(errc::construction_failed, "point coloured twice");
        colors[pt] = next;
      }
      ++next;
    }
  }
  for (auto& c : colors) {
    if (c == unset) fail(errc::construction_failed, "point left uncoloured");
    if (c == unset - 1) c = next;
  }
  return Coloring(std::move(colors));
}

// ---------------------------------------------------------------------------
// Grid patterns for AG(2,p), p > 5

enum class GridVariant { one_mod_3, two_mod_3 };

/// A p x p table of 1-based color ids; cell(x, y) with y = 0 the bottom row.
struct GridPattern {
  std::uint32_t p = 0;
  GridVariant variant = GridVariant::one_mod_3;
  std::vector<std::vector<std::uint32_t>> rows;  // rows[y][x]

  std::uint32_t cell(std::uint32_t x, std::uint32_t y) const { return rows.at(y).at(x); }
  std::uint32_t num_colors() const {
    std::uint32_t k = 0;
    for (const auto& r : rows)
      for (auto c : r) k = std::max(k, c);
    return k;
  }
  std::map<std::uint32_t, std::uint32_t> class_sizes() const {
    std::map<std::uint32_t, std::uint32_t> s;
    for (const auto& r : rows)
      for (auto c : r) ++s[c];
    return s;
  }
  /// Rows as printed: top row first, cells separated by one space.
  std::vector<std::string> printed() const {
    std::vector<std::string> out;
    for (std::size_t y = rows.size(); y-- > 0;) {
      std::string line;
      for (std::size_t x = 0; x < rows[y].size(); ++x) line += (x ? " " : "") + std::to_string(rows[y][x]);
      out.push_back(std::move(line));
    }
    return out;
  }
};

inline GridPattern grid_pattern(std::uint32_t p) {
  if (!gf::is_prime(p)) fail(errc::invalid_characteristic, std::to_string(p) + " is not prime");
  if (p <= 5) fail(errc::unsupported, "grid pattern needs p > 5, got " + std::to_string(p));
  const std::uint32_t k = p / 3;
  const GridVariant variant = p % 3 == 1 ? GridVariant::one_mod_3 : GridVariant::two_mod_3;

  // Row 0 as (start, length) runs: alternating singles and pairs starting
  // at 0, closed by triples.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> runs;
  const std::uint32_t last_single = variant == GridVariant::one_mod_3 ? 3 * k - 3 : 3 * k - 6;
  for (std::uint32_t x = 0; x <= last_single; x += 3) {
    runs.push_back({x, 1});
    if (x < last_single) runs.push_back({x + 1, 2});
  }
  if (variant == GridVariant::one_mod_3) {
    runs.push_back({3 * k - 2, 3});
  } else {
    runs.push_back({3 * k - 5, 3});
    runs.push_back({3 * k - 2, 1});
    runs.push_back({3 * k - 1, 3});
  }
  const auto n = static_cast<std::uint32_t>(runs.size());

  // Run i of row r is shifted by 3r. A single joins the run of the next row
  // that ends two columns to its right, which is run i-1 shifted once more.
  auto owner = [&](std::uint32_t r, std::uint32_t i) -> std::pair<std::uint32_t, std::uint32_t> {
    if (runs[i].second == 1) return {(r + 1) % p, (i + n - 1) % n};
    return {r, i};
  };
  GridPattern g{p, variant, std::vector<std::vector<std::uint32_t>>(p, std::vector<std::uint32_t>(p, 0))};
  std::vector<std::vector<std::uint32_t>> run_at(p, std::vector<std::uint32_t>(p));
  for (std::uint32_t r = 0; r < p; ++r)
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t d = 0; d < runs[i].second; ++d) run_at[r][(runs[i].first + 3 * r + d) % p] = i;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> label;
  for (std::uint32_t y = 0; y < p; ++y)
    for (std::uint32_t x = 0; x < p; ++x) {
      const auto key = owner(y, run_at[y][x]);
      g.rows[y][x] = label.try_emplace(key, static_cast<std::uint32_t>(label.size() + 1)).first->second;
    }
  return g;
}

// ---------------------------------------------------------------------------
// Grid-pattern colorings of planar-function planes, q = p^h, p > 5

/// Affine lines whose affine points are rainbow under the given affine colors.
inline std::vector<line_id> affine_rainbow_lines(const PlanarPlaneAtlas& atlas, const std::vector<color_id>& colors) {
  std::vector<line_id> out;
  const auto& plane = atlas.plane();
  for (line_id l = 0; l < plane.num_lines(); ++l) {
    if (l == atlas.ideal_line()) continue;
    std::vector<color_id> seen;
    for (auto pt : plane.line(l))
      if (atlas.is_affine(pt)) seen.push_back(colors.at(pt));
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) == seen.end()) out.push_back(l);
  }
  return out;
}

struct AffinePlanarColoring {
  std::vector<color_id> colors;  // indexed by affine point id (x.code * q + y.code)
  std::uint32_t num_colors = 0;
  std::uint32_t four_classes = 0;
};

inline void require_grid_atlas(const PlanarPlaneAtlas& atlas) {
  const gf::Field& F = atlas.field();
  if (F.p() <= 5 || F.order() % 3 == 0)
    fail(errc::out_of_hypothesis, "grid colorings need p > 5, got p = " + std::to_string(F.p()));
  if (atlas.function()(F.from_integer(2)) != F.one())
    fail(errc::precondition_failed, "planar function must be normalized so that f(2) = 1");
}

/// Tiles GF(q)^2 by the q^2/p^2 grids (x0 + GF(p)) x (y0 + GF(p)) and colors
/// each with a fresh copy of the p x p pattern. Every affine line is
/// re-checked; a failure for h > 1 raises ExtensionUnverified.
inline AffinePlanarColoring color_affine_planar(const PlanarPlaneAtlas& atlas) {
  require_grid_atlas(atlas);
  const gf::Field& F = atlas.field();
  const std::uint32_t p = F.p(), q = F.order();
  const GridPattern pattern = grid_pattern(p);
  const std::uint32_t per_grid = pattern.num_colors();
  const std::uint32_t grids_per_side = q / p;
  AffinePlanarColoring out;
  out.colors.assign(std::size_t{q} * q, 0);
  for (std::uint32_t x = 0; x < q; ++x)
    for (std::uint32_t y = 0; y < q; ++y) {
      const std::uint32_t grid = (x / p) * grids_per_side + y / p;
      out.colors[atlas.affine_point({x}, {y})] = grid * per_grid + pattern.cell(x % p, y % p) - 1;
    }
  out.num_colors = per_grid * grids_per_side * grids_per_side;
  for (const auto& [_, size] : pattern.class_sizes())
    if (size == 4) ++out.four_classes;
  out.four_classes *= grids_per_side * grids_per_side;

  const auto bad = affine_rainbow_lines(atlas, out.colors);
  if (!bad.empty()) {
    const std::string msg = std::to_string(bad.size()) + " affine lines are rainbow (first: line " +
                            std::to_string(bad.front()) + ")";
    fail(F.h() > 1 ? errc::extension_unverified : errc::construction_failed, msg);
  }
  return out;
}

/// Completes an affine grid coloring by partitioning the ideal line into
/// fresh classes of size 3, using two classes of size 4 when q+1 = 2 mod 3.
inline Coloring color_projective_planar(const PlanarPlaneAtlas& atlas, const AffinePlanarColoring& affine) {
  const std::uint32_t q = atlas.order();
  if (affine.colors.size() != std::size_t{q} * q) fail(errc::domain_mismatch, "affine coloring has wrong size");
  std::vector<color_id> colors(affine.colors);
  colors.resize(atlas.plane().num_points());
  const auto& ideal = atlas.plane().line(atlas.ideal_line());
  const std::uint32_t n = q + 1;
  const std::uint32_t fours = n % 3 == 2 ? 2 : (n % 3 == 1 ? 1 : 0);
  color_id next = affine.num_colors;
  std::uint32_t pos = 0;
  for (std::uint32_t i = 0; i < fours; ++i, ++next)
    for (int j = 0; j < 4; ++j) colors[ideal[pos++]] = next;
  while (pos < n) {
    for (int j = 0; j < 3; ++j) colors[ideal[pos++]] = next;
    ++next;
  }
  return Coloring(std::move(colors));
}

// ---------------------------------------------------------------------------
// q <= 10: fewer colors than points on a line

inline Coloring color_pigeonhole_small(const ProjectivePlane& plane) {
  const std::int64_t q = plane.order();
  if (q > 10) fail(errc::out_of_hypothesis, "pigeonhole coloring needs q <= 10");
  const std::int64_t k = std::min<std::int64_t>(q, std::max<std::int64_t>(1, (q * q + q - 18) / 11));
  std::vector<color_id> colors(plane.num_points());
  for (point_id pt = 0; pt < plane.num_points(); ++pt) colors[pt] = static_cast<color_id>(pt % k);
  return Coloring(std::move(colors));
}

// ---------------------------------------------------------------------------
// The two printed 5x5 tables over AG(2,5)

struct Table5 {
  std::array<std::array<std::uint32_t, 5>, 5> rows;  // rows[y][x], y = 0 at the bottom

  std::uint32_t cell(std::uint32_t x, std::uint32_t y) const { return rows[y][x]; }
};

struct FixtureP5 {
  Table5 almost;
  Table5 five_classes;
};

inline Table5 table_from_printed(const std::array<std::array<std::uint32_t, 5>, 5>& top_first) {
  Table5 t{};
  for (std::size_t i = 0; i < 5; ++i) t.rows[4 - i] = top_first[i];
  return t;
}

inline FixtureP5 fixture_p5() {
  return {table_from_printed({{{6, 2, 7, 7, 6}, {4, 7, 5, 6, 4}, {5, 3, 3, 4, 5}, {3, 1, 1, 5, 1}, {1, 2, 2, 2, 3}}}),
          table_from_printed({{{4, 5, 4, 4, 4}, {3, 3, 4, 3, 3}, {2, 2, 2, 3, 2}, {1, 1, 1, 1, 2}, {1, 5, 5, 5, 5}}})};
}

/// AG(2,5) from x^2 normalized to f(0) = f(1) = 0, f(2) = 1, i.e. 3x^2 + 2x.
inline PlanarPlaneAtlas p5_atlas() {
  auto field = std::make_shared<const gf::Field>(gf::field_make(5, 1));
  return PlanarPlaneAtlas(normalize_planar(planar_square(field), true));
}

/// Affine point colors (0-based) of a 5x5 table on the given atlas.
inline std::vector<color_id> table_colors(const PlanarPlaneAtlas& atlas, const Table5& table) {
  std::vector<color_id> colors(25);
  for (std::uint32_t x = 0; x < 5; ++x)
    for (std::uint32_t y = 0; y < 5; ++y) colors[atlas.affine_point({x}, {y})] = table.cell(x, y) - 1;
  return colors;
}

}  // namespace plane_chroma
