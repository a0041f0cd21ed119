#include <gtest/gtest.h>

#include <functional>

#include "helpers.hpp"
#include "qtoda/arrays.hpp"

using namespace qtoda;
using qtoda::test::from_rows;

namespace {

// brute force: every filling of the free cells in [0, cap], kept when valid
size_t brute_count(const CellArray& base, const std::vector<Cell>& free, const Drift& d, int cap) {
  size_t n = 0;
  CellArray cur = base;
  std::function<void(size_t)> rec = [&](size_t k) {
    if (k == free.size()) {
      n += validate(cur, d).ok;
      return;
    }
    for (int v = 0; v <= cap; ++v) {
      cur.set(free[k], v);
      rec(k + 1);
    }
  };
  rec(0);
  return n;
}

}  // namespace

TEST(Validate, DriftRelaxesColumns) {
  Drift flat(Rational(1, 2)), drift(Rational(1, 2), {0, 2});
  CellArray a = from_rows({{1, 1}, {0}});  // pi_21 = 0 < pi_11 = 1
  EXPECT_FALSE(validate(a, flat).ok);
  EXPECT_EQ(*validate(a, flat).first_bad, (Cell{2, 1}));
  EXPECT_TRUE(validate(a, drift).ok);  // beta_21 = alpha_2 = 2
  EXPECT_FALSE(validate(from_rows({{2, 1}}), flat).ok);
  EXPECT_FALSE(validate(from_rows({{-1}}), flat).ok);
}

TEST(Fiber, StaircaseExample) {
  Drift d(Rational(1, 2));
  auto f = enumerate_fiber({1, 1}, d);
  ASSERT_EQ(f.size(), 2u);
  for (const auto& a : f) {
    EXPECT_TRUE(validate(a, d).ok);
    EXPECT_EQ(outer_diagonal(a), (std::vector<int>{1, 1}));
  }
  EXPECT_TRUE(enumerate_fiber({0, -1}, d).empty());
}

TEST(Fiber, MatchesBruteForce) {
  for (auto alpha : std::vector<std::vector<int>>{{}, {1, 0, 2}, {0, 2, 1}}) {
    Drift d(Rational(1, 2), alpha);
    for (auto n : std::vector<std::vector<int>>{{2}, {1, 2}, {2, 0}, {3, 1}, {1, 2, 1}, {2, 0, 2}}) {
      int r = static_cast<int>(n.size());
      CellArray base(staircase(r + 1));
      std::vector<Cell> free;
      for (Cell c : base.lambda().cells()) {
        if (c.i + c.j == r + 1)
          base.set(c, n[c.i - 1]);
        else
          free.push_back(c);
      }
      EXPECT_EQ(enumerate_fiber(n, d).size(), brute_count(base, free, d, 8));
    }
  }
}

TEST(Fiber, SkewMatchesBruteForce) {
  Drift d(Rational(2, 3), {1, 0, 1});
  SkewShape s(Diagram({3, 3, 3}), Diagram({2, 2}));
  CellArray sigma(s.lambda(), s.mu());
  for (Cell c : sigma.cells()) sigma.set(c, 2);
  CellArray base(s.lambda());
  for (Cell c : s.skew_cells()) base.set(c, 2);
  EXPECT_EQ(enumerate_fiber(s, sigma, d).size(), brute_count(base, s.mu().cells(), d, 6));
}

TEST(Downset, StaircaseDiagonal) {
  Drift d(Rational(1, 2));
  SkewShape s(staircase(3), staircase(2));
  auto ds = downset(s, diagonal_boundary({1, 1}), d);
  EXPECT_EQ(ds.size(), 4u);
  for (const auto& a : ds) EXPECT_TRUE(validate(a, d).ok);
  EXPECT_TRUE(std::is_sorted(ds.begin(), ds.end()));
}

TEST(Downset, FullArrays) {
  Drift d(Rational(1, 2));
  CellArray top = from_rows({{1, 1}, {1}});
  auto ds = downset_full(top, d);
  for (const auto& a : ds) EXPECT_TRUE(validate(a, d).ok);
  // pi_11 = 0 leaves 2 x 2 choices, pi_11 = 1 forces the top
  EXPECT_EQ(ds.size(), 5u);
}

TEST(Restrict, ZerosMu) {
  SkewShape s(Diagram({2, 2}), Diagram({1}));
  CellArray full = from_rows({{1, 2}, {2, 3}});
  CellArray b = restrict_to(full, s);
  EXPECT_TRUE(b.is_boundary());
  EXPECT_EQ(b.at(1, 1), 0);
  EXPECT_EQ(b.at(2, 2), 3);
  EXPECT_EQ(b.cells().size(), 3u);
}
