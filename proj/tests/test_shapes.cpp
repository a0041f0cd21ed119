#include <gtest/gtest.h>

#include "qtoda/shapes.hpp"

using namespace qtoda;

TEST(Diagram, ParseAndPrint) {
  Diagram d = Diagram::parse("4,3,2,1");
  EXPECT_EQ(d.size(), 10);
  EXPECT_EQ(d.length(), 4);
  EXPECT_EQ(d.str(), "4,3,2,1");
  EXPECT_TRUE(Diagram::parse("").empty());
  EXPECT_EQ(Diagram({2, 1, 0, 0}).length(), 2);
  EXPECT_THROW(Diagram::parse("1,2"), std::invalid_argument);
  EXPECT_THROW(Diagram::parse("2,,1"), std::invalid_argument);
  EXPECT_THROW(Diagram::parse("2,-1"), std::invalid_argument);
}

TEST(Diagram, CellsAndIndex) {
  Diagram d({3, 1});
  auto cells = d.cells();
  ASSERT_EQ(cells.size(), 4u);
  for (size_t k = 0; k < cells.size(); ++k) EXPECT_EQ(d.index(cells[k]), static_cast<int>(k));
  EXPECT_TRUE(d.contains(2, 1));
  EXPECT_FALSE(d.contains(2, 2));
  EXPECT_FALSE(d.contains(0, 1));
}

TEST(Staircase, Shapes) {
  EXPECT_TRUE(staircase(1).empty());
  EXPECT_EQ(staircase(4).parts(), (std::vector<int>{3, 2, 1}));
  EXPECT_TRUE(is_staircase(staircase(5)));
  EXPECT_FALSE(is_staircase(Diagram({2, 2})));
  EXPECT_THROW(staircase(0), std::invalid_argument);
}

TEST(Staircase, InteriorOfStaircaseIsSmallerStaircase) {
  for (int r = 2; r <= 6; ++r) EXPECT_EQ(diagram_from_cells(interior(staircase(r))), staircase(r - 1));
}

TEST(SkewShape, MuMustBeInterior) {
  EXPECT_NO_THROW(SkewShape(Diagram({3, 3, 3}), Diagram({2, 2})));
  EXPECT_THROW(SkewShape(Diagram({3, 3, 3}), Diagram({3})), std::invalid_argument);
  EXPECT_THROW(SkewShape(Diagram({2, 1}), Diagram({2})), std::invalid_argument);
  SkewShape s(Diagram({2, 1}), Diagram());
  EXPECT_EQ(s.skew_cells().size(), 3u);
}

TEST(SpecialSets, VertAndHor) {
  SkewShape s(Diagram({3, 3, 3}), Diagram({2, 2}));
  auto sets = special_sets(s);
  EXPECT_EQ(sets.vert, (CellSet{{3, 2}}));
  EXPECT_EQ(sets.corners, (CellSet{{2, 2}}));
  // staircase mu has no vertical cells
  SkewShape st(staircase(5), staircase(4));
  EXPECT_TRUE(special_sets(st).vert.empty());
  EXPECT_TRUE(special_sets(st).hor.empty());
  // (1,2) in mu with (0,3) outside: no Hor; (2,1) in mu below-left of (1,2) in lambda/mu
  SkewShape h(Diagram({3, 3, 2}), Diagram({1, 1}));
  EXPECT_TRUE(in_hor(h, {2, 1}));
  EXPECT_FALSE(in_hor(h, {1, 1}));
}

TEST(Closure, HookClosure) {
  EXPECT_EQ(staircase_closure(Diagram({2, 2})), Diagram({3, 2, 1}));
  EXPECT_EQ(staircase_closure(Diagram({1})), Diagram({1}));
  EXPECT_EQ(staircase_closure(Diagram({3, 1})), Diagram({3, 2, 1}));
  EXPECT_TRUE(is_staircase(staircase_closure(Diagram({4, 2, 2}))));
}
