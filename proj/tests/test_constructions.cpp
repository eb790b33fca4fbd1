#include <gtest/gtest.h>

#include "oracles.hpp"
#include "plane_chroma/constructions.hpp"
#include "plane_chroma/report.hpp"

using namespace plane_chroma;

namespace {

PlanarPlaneAtlas atlas_of(std::uint32_t q) {
  auto F = std::make_shared<const gf::Field>(gf::field_of_order(q));
  return PlanarPlaneAtlas(normalize_planar(planar_square(F), F->p() >= 5));
}

std::vector<std::string> split_rows(const std::string& block) {
  std::vector<std::string> out;
  std::string row;
  for (char ch : block) {
    if (ch == '\n') {
      out.push_back(row);
      row.clear();
    } else {
      row += ch;
    }
  }
  return out;
}

const char* const grid7 =
    "2 13 13 13 4 14 14\n"
    "12 13 11 11 14 12 12\n"
    "10 11 9 9 9 12 10\n"
    "8 8 9 7 7 10 8\n"
    "6 6 7 5 5 5 8\n"
    "1 1 1 5 3 3 6\n"
    "1 2 2 3 4 4 4\n";

const char* const grid11 =
    "2 31 31 31 4 32 32 32 6 33 33\n"
    "30 31 28 28 28 32 29 29 33 30 30\n"
    "27 27 28 25 25 29 26 26 26 30 27\n"
    "24 24 25 22 22 22 26 23 23 23 27\n"
    "19 19 19 22 20 20 20 23 21 21 24\n"
    "19 16 16 16 20 17 17 21 18 18 18\n"
    "15 16 13 13 17 14 14 14 18 15 15\n"
    "12 13 10 10 10 14 11 11 11 15 12\n"
    "9 9 10 7 7 7 11 8 8 12 9\n"
    "1 1 1 7 3 3 8 5 5 5 9\n"
    "1 2 2 3 4 4 4 5 6 6 6\n";

}  // namespace

TEST(CyclicColorings, TriplesEveryLineHasAConsecutivePair) {
  for (std::uint32_t q : {2u, 3u, 5u, 8u, 9u, 11u}) {
    const auto plane = plane_from_cyclic_difference_set(singer_difference_set(q));
    const auto c = color_consecutive_triples(plane);
    EXPECT_EQ(c.num_colors(), upper_bound(q)) << q;
    EXPECT_TRUE(oracle::verified(plane.lines(), c.colors())) << q;
    // every line meets some block of consecutive residues twice
    const bool extra = plane.num_points() % 3 != 0;
    auto block = [&](point_id x) { return extra ? (x < 4 ? 0 : (x - 1) / 3) : x / 3; };
    for (const auto& line : plane.lines()) {
      bool twice = false;
      for (auto a : line)
        for (auto b : line) twice = twice || (a < b && block(a) == block(b));
      EXPECT_TRUE(twice);
    }
  }
}

TEST(CyclicColorings, ThirdCosetsEveryLineHasThirdDifference) {
  for (std::uint32_t q : {4u, 7u, 13u, 16u}) {
    const auto plane = cyclic_plane(q);
    const std::uint32_t v = plane.num_points(), third = v / 3;
    for (const auto& line : plane.lines()) {
      int pairs = 0;
      for (auto a : line)
        for (auto b : line)
          if (a < b && ((b - a) == third || (b - a) == 2 * third)) ++pairs;
      EXPECT_EQ(pairs, 1) << q;
    }
    const auto c = color_third_cosets(plane);
    EXPECT_EQ(c.num_colors(), v / 3);
    EXPECT_TRUE(oracle::verified(plane.lines(), c.colors()));
  }
  try {
    color_third_cosets(plane_from_cyclic_difference_set(singer_difference_set(5)));
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::out_of_hypothesis);
  }
}

TEST(CyclicColorings, NeedsACyclicPlane) {
  const auto atlas = atlas_of(3);
  EXPECT_FALSE(is_cyclic(atlas.plane()));
  EXPECT_THROW(color_consecutive_triples(atlas.plane()), error);
}

TEST(AffineDsColoring, CountsAndShape) {
  for (std::uint32_t q : {2u, 5u, 8u, 11u}) {
    const auto plane = plane_from_affine_difference_set(bose_affine_difference_set(q));
    const auto c = color_affine_ds(plane);
    EXPECT_EQ(c.num_colors(), (q * q + 2) / 3) << q;
    EXPECT_TRUE(oracle::verified(plane.lines(), c.colors())) << q;
    if (q > 2) EXPECT_EQ(c.histogram().at(4), q - 1) << q;
    // group classes are cosets of the subgroup of index t
    const std::uint32_t t = (q * q - 1) / 3;
    for (std::uint32_t g = 0; g < q * q - 1; ++g) EXPECT_EQ(c[g], c[(g + t) % (q * q - 1)]);
  }
  EXPECT_THROW(color_affine_ds(plane_from_affine_difference_set(bose_affine_difference_set(7))), error);
}

TEST(Char3Coloring, OneClassOfFour) {
  for (std::uint32_t q : {3u, 9u, 27u}) {
    const auto atlas = atlas_of(q);
    const auto c = color_planar_char3(atlas);
    EXPECT_EQ(c.num_colors(), (q * q + q) / 3);
    EXPECT_EQ(c.histogram().at(4), 1u);
    EXPECT_TRUE(oracle::verified(atlas.plane().lines(), c.colors())) << q;
  }
  EXPECT_THROW(color_planar_char3(atlas_of(7)), error);
}

TEST(Char3Coloring, CoulterMatthewsPlane) {
  auto F = std::make_shared<const gf::Field>(gf::field_of_order(27));
  const PlanarPlaneAtlas atlas(normalize_planar(planar_coulter_matthews(F, 1), false));
  const auto c = color_planar_char3(atlas);
  EXPECT_EQ(c.num_colors(), 252u);
  EXPECT_TRUE(oracle::verified(atlas.plane().lines(), c.colors()));
}

TEST(GridPattern, ReproducesPrintedTables) {
  EXPECT_EQ(grid_pattern(7).printed(), split_rows(grid7));
  EXPECT_EQ(grid_pattern(11).printed(), split_rows(grid11));
  EXPECT_EQ(grid_pattern(7).variant, GridVariant::one_mod_3);
  EXPECT_EQ(grid_pattern(11).variant, GridVariant::two_mod_3);
  EXPECT_THROW(grid_pattern(5), error);
}

TEST(GridPattern, ClassSizesAndFourCounts) {
  for (std::uint32_t p : {7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u}) {
    const auto g = grid_pattern(p);
    std::uint32_t fours = 0;
    for (auto [_, s] : g.class_sizes()) {
      EXPECT_TRUE(s == 3 || s == 4) << p;
      fours += s == 4;
    }
    EXPECT_EQ(fours, p % 3 == 1 ? p : 2 * p) << p;
  }
}

TEST(GridColoring, AffineAndProjectiveTotals) {
  const std::map<std::uint32_t, std::pair<std::uint32_t, std::uint32_t>> want{
      {7, {14, 16}}, {11, {33, 37}}, {13, {52, 56}}, {17, {85, 91}}, {19, {114, 120}}};
  for (auto [q, totals] : want) {
    const auto atlas = atlas_of(q);
    const auto a = color_affine_planar(atlas);
    EXPECT_EQ(a.num_colors, totals.first);
    // independent check of the affine lines
    oracle::Lines affine;
    for (line_id l = 0; l < atlas.plane().num_lines(); ++l) {
      if (l == atlas.ideal_line()) continue;
      std::vector<std::uint32_t> pts;
      for (auto pt : atlas.plane().line(l))
        if (atlas.is_affine(pt)) pts.push_back(pt);
      affine.push_back(pts);
    }
    EXPECT_TRUE(oracle::rainbow_lines(affine, a.colors).empty()) << q;
    const auto c = color_projective_planar(atlas, a);
    EXPECT_EQ(c.num_colors(), totals.second);
    EXPECT_TRUE(oracle::verified(atlas.plane().lines(), c.colors())) << q;
  }
}

TEST(GridColoring, NeedsNormalizedFunction) {
  auto F = std::make_shared<const gf::Field>(gf::field_of_order(7));
  const PlanarPlaneAtlas raw(normalize_planar(planar_square(F), false));
  EXPECT_THROW(color_affine_planar(raw), error);
  EXPECT_THROW(color_affine_planar(atlas_of(5)), error);
}

TEST(GridColoring, SquareOfPrimeExtension) {
  const auto atlas = atlas_of(49);
  try {
    const auto c = color_projective_planar(atlas, color_affine_planar(atlas));
    EXPECT_TRUE(verify(atlas.plane(), c).ok());
    EXPECT_EQ(c.num_colors(), theorem_bounds(49, Family::planar_projective));
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::extension_unverified);
  }
}

TEST(Pigeonhole, SmallPlanes) {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    const auto plane = cyclic_plane(q);
    const auto c = color_pigeonhole_small(plane);
    EXPECT_LE(c.num_colors(), q);
    EXPECT_TRUE(oracle::verified(plane.lines(), c.colors()));
  }
  const auto ten_points = ProjectivePlane(10, static_cast<std::uint32_t>(plane_size(10)), {});
  EXPECT_EQ(color_pigeonhole_small(ten_points).num_colors(), 8u);
  EXPECT_THROW(color_pigeonhole_small(cyclic_plane(11)), error);
}

TEST(FiveByFive, PrintedTables) {
  const auto fx = fixture_p5();
  EXPECT_EQ(fx.five_classes.rows[0], (std::array<std::uint32_t, 5>{1, 5, 5, 5, 5}));
  const auto atlas = p5_atlas();
  // f = 3x^2 + 2x
  for (std::uint32_t x = 0; x < 5; ++x) EXPECT_EQ(atlas.function()({x}).code, (3 * x * x + 2 * x) % 5);
  const auto five = table_colors(atlas, fx.five_classes);
  EXPECT_TRUE(affine_rainbow_lines(atlas, five).empty());
  const auto almost = table_colors(atlas, fx.almost);
  std::map<std::uint32_t, std::uint32_t> sizes;
  for (auto c : almost) ++sizes[c + 1];
  EXPECT_EQ(sizes, (std::map<std::uint32_t, std::uint32_t>{{1, 4}, {2, 4}, {3, 4}, {4, 3}, {5, 4}, {6, 3}, {7, 3}}));
}

TEST(FiveByFive, AlmostTableDefects) {
  const auto atlas = p5_atlas();
  const auto colors = table_colors(atlas, fixture_p5().almost);
  // brute force over the affine lines
  std::vector<line_id> rainbow;
  for (line_id l = 0; l < atlas.plane().num_lines(); ++l) {
    if (l == atlas.ideal_line()) continue;
    std::set<color_id> seen;
    int n = 0;
    for (auto pt : atlas.plane().line(l))
      if (atlas.is_affine(pt)) {
        seen.insert(colors[pt]);
        ++n;
      }
    if (static_cast<int>(seen.size()) == n) rainbow.push_back(l);
  }
  EXPECT_EQ(rainbow, (std::vector<line_id>{0, 2, 3, 4, 24}));
  EXPECT_EQ(affine_rainbow_lines(atlas, colors), rainbow);
}
