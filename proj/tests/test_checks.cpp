#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"
#include "qtoda/checks.hpp"

using namespace qtoda;
using qtoda::test::from_rows;

namespace {

CellArray constant(const SkewShape& s, int v) {
  CellArray a(s.lambda(), s.mu());
  for (Cell c : a.cells()) a.set(c, v);
  return a;
}

}  // namespace

TEST(Intertwining, SmallStaircase) {
  SkewShape s(staircase(3), staircase(2));
  auto rep = intertwining_check(s, diagonal_boundary({1, 1}), Drift(Rational(1, 2)));
  EXPECT_TRUE(rep.staircase);
  EXPECT_EQ(rep.boundary_states, 4u);
  EXPECT_EQ(rep.full_states, 5u);
  EXPECT_EQ(rep.d_hlg, 0);
  EXPECT_EQ(rep.d_ha, 0);
  EXPECT_EQ(rep.d_llg, 0);
  EXPECT_EQ(rep.d_doob, 0);
  EXPECT_EQ(rep.d_doob_skew, 0);
}

TEST(Intertwining, DriftedStaircase) {
  SkewShape s(staircase(4), staircase(3));
  EXPECT_TRUE(intertwining_check(s, diagonal_boundary({1, 2, 1}), Drift(Rational(2, 3), {1, 0, 1})).pass());
}

TEST(Intertwining, GeneralMu) {
  SkewShape s(Diagram({4, 4, 3, 2}), Diagram({2, 1}));
  EXPECT_TRUE(intertwining_check(s, constant(s, 1), Drift(Rational(2, 3), {1, 0, 2, 0})).pass());
  SkewShape t(Diagram({3, 3, 2}), Diagram({2, 1}));
  EXPECT_TRUE(intertwining_check(t, constant(t, 2), Drift(Rational(1, 2))).pass());
}

TEST(Intertwining, EmptyMu) {
  SkewShape s(Diagram({2, 1}), Diagram());
  auto rep = intertwining_check(s, from_rows({{1, 1}, {2}}), Drift(Rational(1, 2)));
  EXPECT_TRUE(rep.pass());
  EXPECT_EQ(rep.boundary_states, rep.full_states);
}

// With a boundary cell directly below-left of a mu cell the stated rates, weights and
// potential do not intertwine; the discrepancy is recorded, not hidden.
TEST(Intertwining, VertShapeDiscrepancyIsNonzero) {
  SkewShape s(Diagram({3, 3, 3}), Diagram({2, 2}));
  auto rep = intertwining_check(s, constant(s, 2), Drift(Rational(2, 3), {1, 0, 1}));
  EXPECT_FALSE(rep.pass());
  EXPECT_NE(rep.d_hlg, 0);
  EXPECT_NE(rep.d_ha, 0);
}

TEST(OperatorIdentity, DriftFactorRequired) {
  Drift d(Rational(1, 2), {1, 0, 2});
  for (int r = 1; r <= 3; ++r) EXPECT_EQ(rank_step_discrepancy(r, 3, d), 0);
  EXPECT_NE(rank_step_discrepancy(3, 3, d, false), 0);
  EXPECT_EQ(rank_step_discrepancy(3, 3, Drift(Rational(1, 2)), false), 0);
}

TEST(OperatorIdentity, KernelAdjoint) {
  for (auto alpha : std::vector<std::vector<int>>{{}, {2, 1, 0}})
    for (int r = 1; r <= 3; ++r) EXPECT_EQ(kernel_adjoint_failures(r, 3, Drift(Rational(2, 3), alpha)), 0);
}

TEST(SeqLemma, ZeroSequences) {
  Sides s = seq_lemma({}, {}, {}, Rational(1, 2));
  EXPECT_EQ(s.lhs, 0);
  EXPECT_EQ(s.rhs, 0);
}

TEST(SeqLemma, WindowEnlargementChangesNothing) {
  IntSeq a{-1, {2, -3, 1, 0, 3}}, b{0, {1, 1, -2, 3, -1}}, c{1, {-2, 0, 3, 1, -3}};
  Sides s2 = seq_lemma(a, b, c, Rational(3, 5), 2);
  Sides s4 = seq_lemma(a, b, c, Rational(3, 5), 4);
  EXPECT_TRUE(s2.equal());
  EXPECT_EQ(s2.lhs, s4.lhs);
  EXPECT_EQ(s2.rhs, s4.rhs);
  EXPECT_NE(s2.lhs, 0);
}

TEST(SeqLemma, RandomSweep) { EXPECT_TRUE(sweep_seq_lemma(50, 11).pass()); }

TEST(RateBalance, EmptyMu) {
  SkewShape s(Diagram({3, 2}), Diagram());
  Sides r = ok31(s, from_rows({{0, 1, 2}, {1, 3}}), Drift(Rational(1, 2)));
  EXPECT_EQ(r.lhs, 0);
  EXPECT_EQ(r.rhs, 0);
}

TEST(RateBalance, PaperShape) {
  SkewShape s(Diagram({4, 4, 3, 2}), Diagram({2, 1}));
  std::mt19937_64 rng(21);
  for (const Rational& q : {Rational(1, 2), Rational(3, 5)}) {
    Drift d(q, {1, 0, 2, 0});
    for (int t = 0; t < 10; ++t) EXPECT_TRUE(ok31(s, random_array(s.lambda(), d, rng, 3), d).equal());
  }
}

TEST(RateBalance, PotentialIsNeeded) {
  SkewShape s(Diagram({4, 4, 3, 2}), Diagram({2, 1}));
  Drift d(Rational(1, 2), {1, 0, 2, 0});
  std::mt19937_64 rng(2);
  int differs = 0;
  for (int t = 0; t < 10; ++t) {
    CellArray pi = random_array(s.lambda(), d, rng, 3);
    Sides r = ok31(s, pi, d);
    differs += (r.lhs - potential(restrict_to(pi, s), s, d)) != r.rhs;
  }
  EXPECT_GT(differs, 0);
}

TEST(RateBalance, RandomSweep) { EXPECT_TRUE(sweep_ok31(50, 13).pass()); }

TEST(BoundaryForms, Example) {
  SkewShape s(Diagram({4, 4, 3, 2}), staircase(3));
  CellArray pi = from_rows({{0, 1, 1, 3}, {1, 1, 2, 4}, {1, 2, 2}, {3, 3}});
  ASSERT_TRUE(validate(pi, Drift(Rational(1, 2))).ok);
  Lemma53 l = lemma53(s, pi, Rational(1, 2));
  EXPECT_EQ(l.direct, l.collapsed);
  EXPECT_EQ(l.direct, l.expanded);
  EXPECT_NE(l.direct, 0);
}

TEST(BoundaryForms, RejectsNonStaircaseMu) {
  SkewShape s(Diagram({3, 3, 3}), Diagram({2, 2}));
  EXPECT_THROW(lemma53(s, CellArray(s.lambda()), Rational(1, 2)), std::invalid_argument);
}

TEST(BoundaryForms, RandomSweep) { EXPECT_TRUE(sweep_lemma53(20, 17).pass()); }

TEST(Random, GeneratorsProduceValidInput) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    Diagram lambda = random_partition(rng, 16);
    EXPECT_LE(lambda.size(), 16);
    Diagram mu = random_interior_subdiagram(lambda, rng);
    EXPECT_NO_THROW(SkewShape(lambda, mu));
    Drift d(Rational(1, 2), {1, 2});
    EXPECT_TRUE(validate(random_array(lambda, d, rng, 3), d).ok);
  }
}
