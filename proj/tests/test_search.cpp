#include <gtest/gtest.h>

#include "oracles.hpp"
#include "plane_chroma/search.hpp"

using namespace plane_chroma;
using namespace plane_chroma::search;

namespace {

ProjectivePlane fano() {
  return ProjectivePlane(2, 7, {{0, 1, 3}, {1, 2, 4}, {2, 3, 5}, {3, 4, 6}, {4, 5, 0}, {5, 6, 1}, {6, 0, 2}});
}

}  // namespace

TEST(Shape, BalancedAndPrinting) {
  const auto s = ShapeSpec::balanced(31, 8);
  EXPECT_EQ(s.str(), "7x4+1x3");
  EXPECT_EQ(s.total_points(), 31u);
  EXPECT_EQ(s.num_classes(), 8u);
  EXPECT_EQ(ShapeSpec::balanced(25, 7).str(), "4x4+3x3");
  EXPECT_THROW(ShapeSpec::balanced(5, 6), error);
}

TEST(Shape, PartitionCountMatchesMultinomial) {
  EXPECT_EQ(shape_partition_count(ShapeSpec{{{3, 1}, {2, 2}}}), oracle::set_partitions_with_shape({{3, 1}, {2, 2}}));
  EXPECT_EQ(shape_partition_count(ShapeSpec{{{3, 1}, {2, 2}}}), 105u);
  EXPECT_EQ(shape_partition_count(ShapeSpec{{{3, 7}, {4, 1}}}),
            oracle::set_partitions_with_shape({{3, 7}, {4, 1}}));
}

TEST(Search, UnprunedEnumerationVisitsEveryPartition) {
  const auto plane = fano();
  for (const auto& shape : {ShapeSpec{{{3, 1}, {2, 2}}}, ShapeSpec{{{1, 7}}}, ShapeSpec{{{2, 2}, {1, 3}}},
                            ShapeSpec{{{4, 1}, {3, 1}}}}) {
    ShapeSearchOptions opt;
    opt.prune = false;
    opt.stop_at_first = false;
    const auto r = brute_force_shape(plane, shape, {}, opt);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> sm(shape.classes.begin(), shape.classes.end());
    EXPECT_EQ(r.certificate.leaves, oracle::set_partitions_with_shape(sm)) << shape.str();
  }
}

TEST(Search, PrunedAndUnprunedAgree) {
  const auto plane = fano();
  for (std::uint32_t k = 1; k <= 7; ++k) {
    const auto shape = ShapeSpec::balanced(7, k);
    ShapeSearchOptions raw;
    raw.prune = false;
    const auto a = brute_force_shape(plane, shape);
    const auto b = brute_force_shape(plane, shape, {}, raw);
    EXPECT_EQ(a.status, b.status) << k;
    if (a.witness) EXPECT_TRUE(oracle::verified(plane.lines(), *a.witness));
  }
}

TEST(Search, ExactValuesOnTinyPlanes) {
  const auto r2 = brute_force_chi_b(plane_from_cyclic_difference_set(singer_difference_set(2)));
  EXPECT_EQ(r2.status, SearchStatus::sat);
  EXPECT_EQ(r2.max_colors, 2u);
  const auto p3 = plane_from_cyclic_difference_set(singer_difference_set(3));
  const auto r3 = brute_force_chi_b(p3);
  EXPECT_EQ(r3.status, SearchStatus::sat);
  EXPECT_EQ(r3.max_colors, 4u);
  ASSERT_TRUE(r3.witness);
  EXPECT_TRUE(oracle::verified(p3.lines(), r3.witness->colors()));
  for (std::size_t i = 0; i + 1 < r3.per_k.size(); ++i) EXPECT_EQ(r3.per_k[i].status, SearchStatus::unsat);
}

TEST(Search, BudgetIsReported) {
  const auto plane = plane_from_cyclic_difference_set(*find_difference_set(21, 5));
  const auto r = brute_force_chi_b(plane, SearchBudget{5, 0});
  EXPECT_EQ(r.status, SearchStatus::budget_exceeded);
}

TEST(DifferenceSetSearch, FindsFirstSets) {
  EXPECT_EQ(find_difference_set(7, 3)->elements, (std::vector<std::uint32_t>{0, 1, 3}));
  EXPECT_EQ(find_difference_set(13, 4)->elements, (std::vector<std::uint32_t>{0, 1, 3, 9}));
  const auto d21 = find_difference_set(21, 5);
  ASSERT_TRUE(d21);
  EXPECT_EQ(d21->elements, (std::vector<std::uint32_t>{0, 1, 4, 14, 16}));
  std::vector<int> hits(21, 0);
  for (auto a : d21->elements)
    for (auto b : d21->elements)
      if (a != b) ++hits[(a + 21 - b) % 21];
  for (int x = 1; x < 21; ++x) EXPECT_EQ(hits[x], 1);
  EXPECT_FALSE(find_difference_set(8, 3));       // 3*2 != 7
  EXPECT_FALSE(find_difference_set(43, 7));      // order 6: no plane
  EXPECT_THROW(find_difference_set(133, 12, SearchBudget{10, 0}), error);
}

TEST(AffinePlaneOfOrderFive, SearchResultsAreGenuine) {
  const auto atlas = p5_atlas();
  const auto edges = p5_affine_edges(atlas);
  ASSERT_EQ(edges.size(), 30u);
  const auto rep = p5_nonexistence();
  EXPECT_EQ(rep.five_by_five.status, SearchStatus::sat);
  EXPECT_TRUE(rep.fixture_five_classes_ok);
  for (const auto& r : rep.claimed) {
    EXPECT_NE(r.status, SearchStatus::budget_exceeded);
    if (r.witness) {
      // any witness is checked against the affine lines and the shape
      EXPECT_TRUE(oracle::rainbow_lines(edges, *r.witness).empty()) << r.shape.str();
      std::map<std::uint32_t, std::uint32_t> sizes;
      for (auto c : *r.witness) ++sizes[c];
      std::map<std::uint32_t, std::uint32_t> shape;
      for (auto [_, s] : sizes) ++shape[s];
      EXPECT_EQ(shape, r.shape.classes);
    }
  }
}
