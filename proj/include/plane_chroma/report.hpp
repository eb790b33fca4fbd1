#pragma once

// One row per (q, family): build the plane, color it, verify, compare with
// the family's bound.

#include <chrono>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "plane_chroma/coloring.hpp"
#include "plane_chroma/constructions.hpp"
#include "plane_chroma/plane.hpp"
#include "plane_chroma/randomized.hpp"
#include "plane_chroma/search.hpp"

namespace plane_chroma {

/// PG(2,q) as a cyclic plane: Singer set, or a searched set when q = 4.
inline ProjectivePlane cyclic_plane(std::uint32_t q) {
  if (q == 4) {
    const auto ds = search::find_difference_set(21, 5);
    if (!ds) fail(errc::construction_failed, "no (21,5,1) difference set found");
    return plane_from_cyclic_difference_set(*ds);
  }
  return plane_from_cyclic_difference_set(singer_difference_set(q));
}

inline Coloring color_cyclic(const ProjectivePlane& plane) {
  return plane.num_points() % 3 == 0 ? color_third_cosets(plane) : color_consecutive_triples(plane);
}

/// Planar-function atlas from x^2 (normalized with f(2) = 1 when p >= 5).
inline PlanarPlaneAtlas square_atlas(std::uint32_t q) {
  auto field = std::make_shared<const gf::Field>(gf::field_of_order(q));
  return PlanarPlaneAtlas(normalize_planar(planar_square(field), field->p() >= 5));
}

struct ReportRow {
  std::uint32_t q = 0;
  Family family = Family::proposition;
  std::string method;
  std::int64_t bound = 0;
  std::int64_t colors = 0;
  bool exact = false;     // the bound equals floor((q^2+q+1)/3)
  bool verified = false;  // balanced, rainbow-free and colors >= bound
  std::string note;
  double seconds = 0;
};

inline ReportRow report_row(std::uint32_t q, Family family, std::uint64_t seed = 1) {
  ReportRow row;
  row.q = q;
  row.family = family;
  row.bound = theorem_bounds(q, family);
  row.exact = row.bound == upper_bound(q);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    Verdict v;
    switch (family) {
      case Family::proposition: {
        const auto plane = cyclic_plane(q);
        const auto c = color_cyclic(plane);
        row.method = std::string(q == 4 ? "searched-diffset" : "singer") + "+" +
                     (plane.num_points() % 3 == 0 ? "third-cosets" : "triples");
        v = verify(plane, c);
        break;
      }
      case Family::affine_ds: {
        const auto plane = plane_from_affine_difference_set(bose_affine_difference_set(q));
        row.method = "bose+affine-ds";
        v = verify(plane, color_affine_ds(plane));
        break;
      }
      case Family::planar_char3: {
        const auto atlas = square_atlas(q);
        row.method = "planar+stripes";
        v = verify(atlas.plane(), color_planar_char3(atlas));
        break;
      }
      case Family::planar_affine: {
        const auto atlas = square_atlas(q);
        const auto a = color_affine_planar(atlas);
        const Coloring c(a.colors);
        row.method = "planar+grid (affine)";
        v.rainbow_free = affine_rainbow_lines(atlas, a.colors).empty();
        v.balanced = c.max_class_size() - c.min_class_size() <= 1;
        v.num_colors = c.num_colors();
        break;
      }
      case Family::planar_projective: {
        const auto atlas = square_atlas(q);
        row.method = "planar+grid";
        v = verify(atlas.plane(), color_projective_planar(atlas, color_affine_planar(atlas)));
        break;
      }
      case Family::randomized:
      case Family::remark: {
        const auto plane = cyclic_plane(q);
        randomized::RandomizedParams params;
        params.mode = family == Family::randomized ? randomized::Mode::thm4 : randomized::Mode::remark;
        params.seed = seed;
        const auto r = randomized::randomized_balanced_coloring(plane, params);
        row.method = std::string("singer+randomized-") + std::string(randomized::to_string(params.mode));
        row.note = "seed " + std::to_string(seed) + ", attempts " + std::to_string(r.attempts);
        v = r.verdict;
        break;
      }
    }
    row.colors = v.num_colors;
    row.verified = v.ok() && row.colors >= row.bound;
  } catch (const error& e) {
    row.note = e.what();
  }
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

/// Rows for every prime power in qs and every family whose hypothesis q meets.
inline std::vector<ReportRow> report_table(const std::vector<std::uint32_t>& qs, std::uint64_t seed = 1) {
  std::vector<ReportRow> rows;
  for (auto q : qs) {
    if (!gf::as_prime_power(q)) continue;
    for (auto f : all_families())
      if (in_hypothesis(q, f)) rows.push_back(report_row(q, f, seed));
  }
  return rows;
}

inline nlohmann::json to_json(const ReportRow& r) {
  return {{"q", r.q},           {"family", std::string(to_string(r.family))},
          {"method", r.method}, {"bound", r.bound},
          {"colors", r.colors}, {"exact", r.exact},
          {"verified", r.verified}, {"note", r.note},
          {"seconds", r.seconds}};
}

}  // namespace plane_chroma
