// Acceptance runner: one PASS/FAIL line per criterion.
// Exit status is 0 once every criterion has run; with --strict, 1 if any failed.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>

#include "qtoda/checks.hpp"
#include "qtoda/sim.hpp"
#include "qtoda/toda.hpp"
#include "suites.hpp"

using namespace qtoda;
using namespace qtoda::cli;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool all_pass(const std::vector<CheckResult>& rs) {
  for (const auto& r : rs)
    if (!r.pass) return false;
  return true;
}

Outcome c1() {
  auto t0 = std::chrono::steady_clock::now();
  auto rs = suite_oracles();
  double s = seconds_since(t0);
  return {all_pass(rs) && s < 30, std::to_string(rs.size()) + " (q, alpha, r) grids, " + std::to_string(s) + " s (limit 30 s)"};
}

Outcome c2() {
  auto rs = suite_toda();
  int bad = 0;
  for (const auto& r : rs) bad += !r.pass;
  return {bad == 0, std::to_string(rs.size()) + " grids, " + std::to_string(bad) + " with a nonzero residual"};
}

Outcome c3() {
  auto rs = suite_rank_step();
  Rational worst = 0;
  for (const auto& r : rs) worst = std::max(worst, r.discrepancy);
  return {all_pass(rs), "max discrepancy " + to_string(worst) + " over " + std::to_string(rs.size()) + " checks"};
}

Outcome c4() {
  auto t0 = std::chrono::steady_clock::now();
  auto rs = suite_intertwine(intertwine_instances());
  double s = seconds_since(t0);
  int bad = 0;
  for (const auto& r : rs) {
    bad += !r.pass;
    std::printf("    %s %s/%s alpha=%s q=%s: HL-LG %s, HA %s, LK-KG %s\n", r.pass ? "ok  " : "FAIL",
                r.instance["lambda"].dump().c_str(), r.instance["mu"].dump().c_str(),
                r.instance["alpha"].dump().c_str(), r.instance["q"].get<std::string>().c_str(),
                r.extra["d_hlg"].get<std::string>().c_str(), r.extra["d_ha"].get<std::string>().c_str(),
                r.extra["d_llg"].get<std::string>().c_str());
  }
  return {bad == 0 && s < 300, std::to_string(rs.size()) + " instances, " + std::to_string(bad) + " failing, " +
                                   std::to_string(s) + " s (limit 300 s)"};
}

Outcome c5() {
  SweepResult a = sweep_seq_lemma(50, 2024);
  SweepResult b = sweep_ok31(50, 2024);
  return {a.pass() && b.pass() && a.trials == 50 && b.trials == 50,
          "sequence identity " + std::to_string(a.failures) + "/50 failures, rate balance " +
              std::to_string(b.failures) + "/50 failures"};
}

Outcome c6() {
  SweepResult s = sweep_lemma53(20, 2024);
  return {s.pass() && s.trials == 20, std::to_string(s.failures) + "/20 failures"};
}

Outcome c7() {
  auto rs = suite_limits();
  int bad = 0;
  double worst = 0;
  for (const auto& r : rs) {
    bad += !r.pass;
    if (r.check == "coefficient_limit") worst = std::max(worst, r.extra["gaps"].back().get<double>());
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu sequences, %d failing, largest final coefficient gap %.3g (limit 1e-2)",
                rs.size(), bad, worst);
  return {bad == 0, buf};
}

Outcome c8() {
  auto t0 = std::chrono::steady_clock::now();
  Drift d(Rational(1, 2));
  SkewShape shape(staircase(3), staircase(2));
  WeightedEnsemble ens = ensemble(shape, diagonal_boundary({1, 1}), d);
  RateVariant var = RateVariant::basic(2, d.q());
  std::vector<Trajectory> runs;
  for (uint64_t k = 0; k < 50000; ++k) {
    Rng rng = replica_rng(8, k);
    runs.push_back(project(simulate(ens.members[sample_index(ens, rng)], var, INFINITY, rng), shape));
  }
  RateAudit audit = rate_audit(runs, shape, doob_theory(d));

  RateVariant one = RateVariant::basic(1, d.q());
  CellArray p(Diagram({1}));
  p.set({1, 1}, 1);
  double sum = 0;
  const int n = 10000;
  for (int k = 0; k < n; ++k) {
    Rng rng = replica_rng(88, k);
    sum += simulate(p, one, INFINITY, rng).events.back().t;
  }
  double mean = sum / n, sigma = 2.0 / std::sqrt(n);
  double s = seconds_since(t0);
  bool pass = audit.max_abs_z() <= 4 && std::fabs(mean - 2.0) <= 4 * sigma && s < 120;
  char buf[200];
  std::snprintf(buf, sizeof buf, "max |z| %.3f over %zu rows with data; absorption mean %.4f (2 +- %.3f); %.1f s",
                audit.max_abs_z(), audit.with_data(), mean, 4 * sigma, s);
  return {pass, buf};
}

Outcome c9() {
  SkewShape shape(staircase(3), staircase(2));
  ChiSquare cs = conditional_law_test(shape, diagonal_boundary({3, 3}), Drift(Rational(1, 2)), {0.25, 0.5, 1.0, 2.0},
                                      20000, 9);
  char buf[200];
  std::snprintf(buf, sizeof buf, "chi2 %.2f, dof %d, p %.4f (need > 0.001), %zu samples in %zu boundary states",
                cs.statistic, cs.dof, cs.p_value, cs.samples, cs.groups);
  return {cs.p_value > 0.001 && cs.samples >= 20000, buf};
}

}  // namespace

int main(int argc, char** argv) {
  bool strict = argc > 1 && std::strcmp(argv[1], "--strict") == 0;
  std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"1 coefficient oracles agree", c1},
      {"2 Toda eigen-relation", c2},
      {"3 operator identity h q = z q h", c3},
      {"4 intertwinings", c4},
      {"5 sequence identity and rate balance", c5},
      {"6 boundary rate forms", c6},
      {"7 q -> 1 limits", c7},
      {"8 simulation rate audit", c8},
      {"9 conditional law", c9},
  };
  int failed = 0;
  for (auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s  criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return strict && failed ? 1 : 0;
}
