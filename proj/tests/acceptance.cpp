// Acceptance suite: one line per criterion, PASS / FAIL / INCONCLUSIVE.
// Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "plane_chroma/constructions.hpp"
#include "plane_chroma/randomized.hpp"
#include "plane_chroma/report.hpp"
#include "plane_chroma/search.hpp"

using namespace plane_chroma;

namespace {

enum class Outcome { pass, fail, inconclusive };

struct Check {
  Outcome outcome = Outcome::pass;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      outcome = Outcome::fail;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

int failures = 0;

void criterion(const char* id, double limit_seconds, const std::function<void(Check&)>& body) {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.outcome = Outcome::fail;
    c.note(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_seconds > 0 && secs >= limit_seconds) c.require(false, "took longer than " + std::to_string(limit_seconds) + " s");
  const char* tag = c.outcome == Outcome::pass ? "PASS" : c.outcome == Outcome::fail ? "FAIL" : "INCONCLUSIVE";
  if (c.outcome == Outcome::fail) ++failures;
  std::printf("%-5s %-12s %8.3f s  %s\n", id, tag, secs, c.detail.c_str());
  std::fflush(stdout);
}

bool naive_ok(const ProjectivePlane& plane, const Coloring& c) { return oracle::verified(plane.lines(), c.colors()); }

PlanarPlaneAtlas atlas_of(std::uint32_t q, bool cm = false) {
  auto F = std::make_shared<const gf::Field>(gf::field_of_order(q));
  auto f = cm ? planar_coulter_matthews(F, 1) : planar_square(F);
  return PlanarPlaneAtlas(normalize_planar(f, F->p() >= 5));
}

std::string fmt(double x, int digits = 17) {
  std::ostringstream s;
  s.precision(digits);
  s << x;
  return s.str();
}

const std::vector<std::string> figure_7 = {"2 13 13 13 4 14 14", "12 13 11 11 14 12 12", "10 11 9 9 9 12 10",
                                           "8 8 9 7 7 10 8",     "6 6 7 5 5 5 8",         "1 1 1 5 3 3 6",
                                           "1 2 2 3 4 4 4"};
const std::vector<std::string> figure_11 = {
    "2 31 31 31 4 32 32 32 6 33 33",      "30 31 28 28 28 32 29 29 33 30 30", "27 27 28 25 25 29 26 26 26 30 27",
    "24 24 25 22 22 22 26 23 23 23 27", "19 19 19 22 20 20 20 23 21 21 24", "19 16 16 16 20 17 17 21 18 18 18",
    "15 16 13 13 17 14 14 14 18 15 15", "12 13 10 10 10 14 11 11 11 15 12", "9 9 10 7 7 7 11 8 8 12 9",
    "1 1 1 7 3 3 8 5 5 5 9",           "1 2 2 3 4 4 4 5 6 6 6"};

}  // namespace

int main() {
  criterion("AC1", 30, [](Check& c) {
    for (std::uint32_t q : {2u, 3u, 5u, 7u, 8u, 9u, 11u, 13u, 16u, 17u, 19u, 23u, 25u, 27u, 29u, 31u, 32u}) {
      const auto plane = plane_from_cyclic_difference_set(singer_difference_set(q));
      c.require(verify_axioms(plane).ok(), "axioms q=" + std::to_string(q));
      const auto col = q % 3 == 1 ? color_third_cosets(plane) : color_consecutive_triples(plane);
      const auto v = verify(plane, col);
      c.require(v.ok() && naive_ok(plane, col), "not verified q=" + std::to_string(q));
      c.require(static_cast<std::int64_t>(v.num_colors) == upper_bound(q), "wrong count q=" + std::to_string(q));
    }
    c.note("17 orders, floor((q^2+q+1)/3) colors each");
  });

  criterion("AC2", 10, [](Check& c) {
    const auto ds = search::find_difference_set(21, 5);
    c.require(ds.has_value(), "no (21,5,1) set found");
    if (!ds) return;
    const auto plane = plane_from_cyclic_difference_set(*ds);
    const auto col = color_third_cosets(plane);
    c.require(verify(plane, col).ok() && naive_ok(plane, col), "not verified");
    c.require(col.num_colors() == 7, "colors = " + std::to_string(col.num_colors()));
    c.note("set {0,1,4,14,16}: 7 colors");
  });

  criterion("AC3", 10, [](Check& c) {
    for (std::uint32_t q : {5u, 8u, 11u, 17u}) {
      const auto plane = plane_from_affine_difference_set(bose_affine_difference_set(q));
      c.require(verify_axioms(plane).ok(), "axioms q=" + std::to_string(q));
      const auto col = color_affine_ds(plane);
      c.require(verify(plane, col).ok() && naive_ok(plane, col), "not verified q=" + std::to_string(q));
      c.require(col.num_colors() == (q * q + 2) / 3, "count q=" + std::to_string(q));
      const auto h = col.histogram();
      c.require(h.count(4) && h.at(4) == q - 1, "size-4 classes q=" + std::to_string(q));
    }
    c.note("q=5,8,11,17: 9, 22, 41, 97 colors");
  });

  criterion("AC4", 30, [](Check& c) {
    for (std::uint32_t q : {3u, 9u, 27u}) {
      const auto atlas = atlas_of(q);
      c.require(verify_axioms(atlas.plane()).ok(), "axioms q=" + std::to_string(q));
      const auto col = color_planar_char3(atlas);
      c.require(verify(atlas.plane(), col).ok() && naive_ok(atlas.plane(), col), "not verified q=" + std::to_string(q));
      c.require(col.num_colors() == (q * q + q) / 3, "count q=" + std::to_string(q));
      const auto h = col.histogram();
      c.require(h.count(4) && h.at(4) == 1, "size-4 classes q=" + std::to_string(q));
    }
    c.note("q=3,9,27: 4, 30, 252 colors");
  });

  criterion("AC5", 10, [](Check& c) {
    c.require(grid_pattern(7).printed() == figure_7, "p=7 pattern differs from the printed table");
    c.require(grid_pattern(11).printed() == figure_11, "p=11 pattern differs from the printed table");
    for (auto [q, want] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{7, 16}, {11, 37}, {13, 56}}) {
      const auto atlas = atlas_of(q);
      const auto affine = color_affine_planar(atlas);
      oracle::Lines lines;
      for (line_id l = 0; l < atlas.plane().num_lines(); ++l) {
        if (l == atlas.ideal_line()) continue;
        std::vector<std::uint32_t> pts;
        for (auto pt : atlas.plane().line(l))
          if (atlas.is_affine(pt)) pts.push_back(pt);
        lines.push_back(pts);
      }
      c.require(oracle::rainbow_lines(lines, affine.colors).empty(), "affine rainbow q=" + std::to_string(q));
      const auto col = color_projective_planar(atlas, affine);
      c.require(verify(atlas.plane(), col).ok() && naive_ok(atlas.plane(), col), "not verified q=" + std::to_string(q));
      c.require(col.num_colors() == want, "q=" + std::to_string(q) + " total " + std::to_string(col.num_colors()));
    }
    const auto a49 = atlas_of(49);
    try {
      const auto col = color_projective_planar(a49, color_affine_planar(a49));
      c.require(verify(a49.plane(), col).ok() && naive_ok(a49.plane(), col), "q=49 emitted but does not verify");
      c.note("q=49 tiled extension verifies with " + std::to_string(col.num_colors()) + " colors");
    } catch (const error& e) {
      c.require(e.code() == errc::extension_unverified, std::string("q=49: ") + e.what());
      c.note("q=49 reports ExtensionUnverified");
    }
  });

  criterion("AC6", 120, [](Check& c) {
    const auto plane = plane_from_cyclic_difference_set(singer_difference_set(139));
    c.require(verify_axioms(plane).ok(), "axioms");
    randomized::RandomizedParams p;
    const auto r = randomized::randomized_balanced_coloring(plane, p);
    c.require(r.attempts <= 20, "attempts");
    c.require(r.verdict.ok() && naive_ok(plane, r.coloring), "not verified");
    c.require(r.verdict.num_colors >= 1944, "colors " + std::to_string(r.verdict.num_colors));
    c.require(r.verdict.min_class_size >= 10 && r.verdict.max_class_size <= 11, "class sizes");
    const auto again = randomized::randomized_balanced_coloring(plane, p);
    c.require(again.coloring.colors() == r.coloring.colors(), "not seed-deterministic");
    c.note(std::to_string(r.verdict.num_colors) + " colors, sizes " + std::to_string(r.verdict.min_class_size) + ".." +
           std::to_string(r.verdict.max_class_size) + ", " + std::to_string(r.attempts) + " attempt(s), seed 1");
  });

  for (std::uint32_t q : {11u, 37u, 121u}) {
    criterion(("AC7." + std::to_string(q)).c_str(), 120, [q](Check& c) {
      const auto plane = plane_from_cyclic_difference_set(singer_difference_set(q));
      randomized::RandomizedParams p;
      p.mode = randomized::Mode::remark;
      const auto r = randomized::randomized_balanced_coloring(plane, p);
      const std::int64_t want = (std::int64_t{q} * q + q - 18) / 11;
      c.require(r.verdict.ok() && naive_ok(plane, r.coloring), "not verified");
      c.require(static_cast<std::int64_t>(r.verdict.num_colors) >= want, "colors " + std::to_string(r.verdict.num_colors));
      c.require(r.verdict.min_class_size >= 11 && r.verdict.max_class_size <= 12, "class sizes");
      c.note("q=" + std::to_string(q) + ": " + std::to_string(r.verdict.num_colors) + " colors (need " +
             std::to_string(want) + ")");
    });
  }

  criterion("AC8", 0, [](Check& c) {
    for (auto [n, k] : std::vector<std::pair<double, std::int64_t>>{{100, 10}, {1000, 30}, {1e4, 99}}) {
      // left side in index order, right side term by term
      double a = 1.0;
      for (std::int64_t i = 1; i <= k; ++i) a *= 1.0 - static_cast<double>(i) / n;
      const double kk = static_cast<double>(k);
      const double rhs = std::exp(-kk * (kk + 2) / (2 * n - kk - 2)) * std::sqrt((n - 1) / (n - kk - 1)) *
                         std::pow(1 + kk * kk / (12 * (n - kk - 1) * (n - kk - 1)), kk) *
                         std::pow(1 - (kk + 2) * (kk + 2) / (12 * n * n), kk * (kk + 2) / (2 * n - kk - 2));
      c.require(randomized::a_n_k(n, k) == a, "library product differs from index-order product");
      c.require(std::fabs(randomized::a_n_k_bound(n, k) / rhs - 1) < 1e-14, "library bound differs from direct evaluation");
      const double slack = rhs - a;
      const std::string tag = "(" + fmt(n, 6) + "," + std::to_string(k) + "): A=" + fmt(a, 10) + " bound=" +
                              fmt(rhs, 10) + " slack=" + fmt(slack, 4);
      c.require(slack > 0, tag);
      if (slack > 0) c.note(tag);
    }
  });

  criterion("AC9", 0, [](Check& c) {
    double worst = 0;
    for (int q = 134; q <= 200; ++q) {
      const auto f = randomized::feasibility(q, 0.77);
      c.require(f.cond1 && f.cond2, "condition false at q=" + std::to_string(q));
      const long double ref = static_cast<long double>(q) * q * std::exp(-3.08L);
      const double rel = static_cast<double>(std::fabs((f.expected_unresolved - ref) / ref));
      worst = std::max(worst, rel);
      c.require(rel <= 1e-12, "expected_unresolved off at q=" + std::to_string(q));
    }
    c.note("q=134..200, worst relative error " + fmt(worst, 3));
  });

  criterion("AC10", 60, [](Check& c) {
    const auto r2 = search::brute_force_chi_b(plane_from_cyclic_difference_set(singer_difference_set(2)));
    const auto r3 = search::brute_force_chi_b(plane_from_cyclic_difference_set(singer_difference_set(3)));
    c.require(r2.status == search::SearchStatus::sat && r2.max_colors == 2, "PG(2,2)");
    c.require(r3.status == search::SearchStatus::sat && r3.max_colors == 4, "PG(2,3)");
    c.require(r2.max_colors == upper_bound(2) && r3.max_colors == upper_bound(3), "floor bound");
    c.note("PG(2,2) = 2, PG(2,3) = 4");
  });

  criterion("AC11", 0, [](Check& c) {
    search::SearchBudget budget;
    budget.max_seconds = 3600;
    const auto rep = search::p5_nonexistence(budget, {}, false);
    c.require(rep.five_by_five.status == search::SearchStatus::sat, "5x5 shape not SAT");
    c.require(rep.fixture_five_classes_ok, "printed 5x5 table does not verify");
    const auto atlas = p5_atlas();
    const auto edges = search::p5_affine_edges(atlas);
    bool inconclusive = false;
    for (const auto& r : rep.claimed) {
      const auto& cert = r.certificate;
      std::string line = r.shape.str() + " " + std::string(search::to_string(r.status)) + " nodes=" +
                         std::to_string(cert.nodes) + " pair_bound=" + std::to_string(cert.prunes.at("pair_bound")) +
                         " dead_line=" + std::to_string(cert.prunes.at("dead_line"));
      if (r.status == search::SearchStatus::budget_exceeded) {
        inconclusive = true;
        c.note(line);
        continue;
      }
      if (r.status == search::SearchStatus::sat) {
        const bool genuine = oracle::rainbow_lines(edges, *r.witness).empty();
        line += genuine ? " counterexample (rows top first):" : " witness FAILS the naive check";
        for (int y = 4; y >= 0; --y) {
          line += " [";
          for (std::uint32_t x = 0; x < 5; ++x)
            line += (x ? " " : "") +
                    std::to_string((*r.witness)[atlas.affine_point({x}, {static_cast<std::uint32_t>(y)})] + 1);
          line += "]";
        }
        c.require(false, line);
        continue;
      }
      c.note(line);
    }
    if (inconclusive && c.outcome == Outcome::pass) c.outcome = Outcome::inconclusive;
  });

  criterion("AC12", 0, [](Check& c) {
    struct Case {
      ProjectivePlane plane;
      Coloring coloring;
    };
    std::vector<Case> cases;
    for (std::uint32_t q : {2u, 3u, 5u, 7u, 8u}) {
      auto plane = plane_from_cyclic_difference_set(singer_difference_set(q));
      auto col = q % 3 == 1 ? color_third_cosets(plane) : color_consecutive_triples(plane);
      cases.push_back({std::move(plane), std::move(col)});
    }
    for (std::uint32_t q : {5u, 8u}) {
      auto plane = plane_from_affine_difference_set(bose_affine_difference_set(q));
      auto col = color_affine_ds(plane);
      cases.push_back({std::move(plane), std::move(col)});
    }
    {
      const auto atlas = atlas_of(9);
      cases.push_back({atlas.plane(), color_planar_char3(atlas)});
      const auto a7 = atlas_of(7);
      cases.push_back({a7.plane(), color_projective_planar(a7, color_affine_planar(a7))});
    }
    std::mt19937_64 rng(20240601);
    int mismatches = 0, still_ok = 0;
    for (int i = 0; i < 10000; ++i) {
      const auto& base = cases[rng() % cases.size()];
      std::vector<std::uint64_t> raw(base.coloring.colors().begin(), base.coloring.colors().end());
      const auto pt = rng() % raw.size();
      raw[pt] = rng() % (base.coloring.num_colors() + 1);  // K means a fresh class
      const auto mutated = Coloring::from_labels(raw);
      const bool lib = verify(base.plane, mutated).ok();
      const bool naive = naive_ok(base.plane, mutated);
      if (lib != naive) ++mismatches;
      still_ok += naive;
    }
    c.require(mismatches == 0, std::to_string(mismatches) + " disagreements");
    if (mismatches == 0) c.note("10000 mutations, 0 disagreements, " + std::to_string(still_ok) + " still verified");
  });

  return failures == 0 ? 0 : 1;
}
