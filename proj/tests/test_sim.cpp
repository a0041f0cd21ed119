#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "qtoda/sim.hpp"

using namespace qtoda;
using qtoda::test::from_rows;

TEST(Sample, SingletonEnsemble) {
  WeightedEnsemble e;
  e.members = {from_rows({{2}})};
  e.weights = {Rational(3)};
  e.normalizer = 3;
  for (uint64_t s = 0; s < 5; ++s) EXPECT_EQ(sample_initial(e, s), e.members[0]);
  EXPECT_THROW(sample_initial(WeightedEnsemble{}, 0), std::invalid_argument);
}

TEST(Sample, TwoMemberFrequencies) {
  SkewShape s(staircase(3), staircase(2));
  auto e = ensemble(s, diagonal_boundary({1, 1}), Drift(Rational(1, 2)));
  ASSERT_EQ(e.members.size(), 2u);
  const int n = 20000;
  int hits = 0;
  for (int k = 0; k < n; ++k) {
    Rng rng = replica_rng(42, k);
    hits += sample_index(e, rng) == 0;
  }
  double p = to_double(e.probability(0));
  EXPECT_LE(std::fabs(hits - n * p), 4 * std::sqrt(n * p * (1 - p)));
}

TEST(Sample, Deterministic) {
  SkewShape s(staircase(4), staircase(3));
  auto e = ensemble(s, diagonal_boundary({2, 2, 2}), Drift(Rational(1, 2)));
  EXPECT_EQ(sample_initial(e, 77), sample_initial(e, 77));
}

TEST(Simulate, ZeroArrayIsAbsorbed) {
  CellArray zero(staircase(4));
  Trajectory tr = simulate(zero, RateVariant::basic(3, Rational(1, 2)), INFINITY, uint64_t{1});
  EXPECT_TRUE(tr.events.empty());
}

TEST(Simulate, ReproducibleAndValid) {
  Drift d(Rational(2, 3), {1, 0, 1});
  SkewShape s(Diagram({3, 3, 3}), Diagram({2, 2}));
  CellArray pi(s.lambda());
  for (Cell c : s.lambda().cells()) pi.set(c, 3);
  RateVariant v = RateVariant::full(s, d);
  Trajectory a = simulate(pi, v, INFINITY, uint64_t{5});
  Trajectory b = simulate(pi, v, INFINITY, uint64_t{5});
  ASSERT_EQ(a.events.size(), b.events.size());
  CellArray cur = pi;
  for (size_t k = 0; k < a.events.size(); ++k) {
    EXPECT_EQ(a.events[k].t, b.events[k].t);
    EXPECT_EQ(a.events[k].cell, b.events[k].cell);
    if (k > 0) EXPECT_GT(a.events[k].t, a.events[k - 1].t);
    cur.add(a.events[k].cell, -1);
    EXPECT_TRUE(validate(cur, d).ok);
  }
  EXPECT_EQ(cur, CellArray(s.lambda()));
}

TEST(Simulate, HorizonStopsEarly) {
  CellArray pi = from_rows({{5, 5}, {5}});
  RateVariant v = RateVariant::basic(2, Rational(1, 2));
  Trajectory tr = simulate(pi, v, 0.5, uint64_t{3});
  for (const Event& e : tr.events) EXPECT_LE(e.t, 0.5);
  EXPECT_EQ(tr.state_at(0.5), tr.final_state());
}

TEST(Simulate, SingleCellAbsorptionMean) {
  RateVariant v = RateVariant::basic(1, Rational(1, 2));
  CellArray p = from_rows({{1}});
  const int n = 10000;
  double sum = 0;
  for (int k = 0; k < n; ++k) {
    Rng rng = replica_rng(123, k);
    Trajectory tr = simulate(p, v, INFINITY, rng);
    ASSERT_EQ(tr.events.size(), 1u);
    sum += tr.events[0].t;
  }
  EXPECT_LE(std::fabs(sum / n - 2.0), 4 * 2.0 / std::sqrt(n));
}

TEST(Project, PartitionsEvents) {
  SkewShape s(staircase(4), staircase(3));
  Drift d(Rational(1, 2));
  auto e = ensemble(s, diagonal_boundary({2, 2, 2}), d);
  Trajectory tr = simulate(sample_initial(e, 1), RateVariant::full(s, d), INFINITY, uint64_t{1});
  Trajectory p = project(tr, s);
  size_t inner = 0;
  for (const Event& ev : tr.events) inner += s.in_mu(ev.cell);
  EXPECT_EQ(p.events.size() + inner, tr.events.size());
  CellArray cur = p.initial;
  for (const Event& ev : p.events) {
    cur.add(ev.cell, -1);
    EXPECT_TRUE(validate(cur, d).ok);
  }
  SkewShape none(s.lambda(), Diagram());
  EXPECT_EQ(project(tr, none).events.size(), tr.events.size());
}

namespace {

std::vector<Trajectory> staircase_runs(int replicas) {
  SkewShape s(staircase(3), staircase(2));
  Drift d(Rational(1, 2));
  auto e = ensemble(s, diagonal_boundary({1, 1}), d);
  RateVariant v = RateVariant::basic(2, d.q());
  std::vector<Trajectory> runs;
  for (int k = 0; k < replicas; ++k) {
    Rng rng = replica_rng(8, k);
    runs.push_back(project(simulate(e.members[sample_index(e, rng)], v, INFINITY, rng), s));
  }
  return runs;
}

}  // namespace

TEST(Audit, DoobRatesFit) {
  SkewShape s(staircase(3), staircase(2));
  Drift d(Rational(1, 2));
  auto runs = staircase_runs(20000);
  RateAudit a = rate_audit(runs, s, doob_theory(d));
  EXPECT_GT(a.with_data(), 0u);
  EXPECT_LE(a.max_abs_z(), 4.0);
  RateAudit b = rate_audit(runs, s, boundary_theory(s, d));
  EXPECT_LE(b.max_abs_z(), 4.0);
}

TEST(Audit, DetectsDoubledRates) {
  SkewShape s(staircase(3), staircase(2));
  Drift d(Rational(1, 2));
  TheoryRate good = doob_theory(d);
  TheoryRate doubled = [good](const CellArray& sg, Cell c) { return Rational(2 * good(sg, c)); };
  EXPECT_GT(rate_audit(staircase_runs(20000), s, doubled).max_abs_z(), 4.0);
}

TEST(Audit, UnvisitedStatesHaveNoData) {
  SkewShape s(staircase(3), staircase(2));
  Trajectory t;
  t.initial = diagonal_boundary({0, 0});
  RateAudit a = rate_audit({t}, s, doob_theory(Drift(Rational(1, 2))));
  EXPECT_EQ(a.with_data(), 0u);
  EXPECT_EQ(a.max_abs_z(), 0.0);
}

TEST(ConditionalLaw, StaircasePasses) {
  SkewShape s(staircase(3), staircase(2));
  ChiSquare cs = conditional_law_test(s, diagonal_boundary({2, 2}), Drift(Rational(1, 2)), {0.5, 1.0}, 5000, 4);
  EXPECT_GT(cs.dof, 0);
  EXPECT_GT(cs.p_value, 0.001);
}
