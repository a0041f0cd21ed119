#include "suites.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qtoda/checks.hpp"
#include "qtoda/toda.hpp"

namespace qtoda::cli {

using nlohmann::json;

json CheckResult::to_json() const {
  json j = {{"check", check}, {"instance", instance}, {"discrepancy", to_string(discrepancy)}, {"pass", pass}};
  for (auto& [k, v] : extra.items()) j[k] = v;
  return j;
}

json rows_json(const CellArray& a) {
  json rows = json::array();
  for (int i = 1; i <= a.lambda().length(); ++i) {
    json row = json::array();
    for (int j = 1; j <= a.lambda().part(i); ++j) row.push_back(a.at(i, j));
    rows.push_back(row);
  }
  return rows;
}

json shape_json(const Diagram& lambda, const Diagram& mu, const std::vector<int>& alpha, const Rational& q) {
  return {{"lambda", lambda.parts()}, {"mu", mu.parts()}, {"alpha", alpha}, {"q", to_string(q)}};
}

CellArray constant_boundary(const SkewShape& shape, int v) {
  CellArray s(shape.lambda(), shape.mu());
  for (Cell c : s.cells()) s.set(c, v);
  return s;
}

std::vector<IntertwineInstance> intertwine_instances() {
  struct Raw {
    std::vector<int> lambda, mu, alpha;
    Rational q;
    std::vector<int> n;  // staircase diagonal, or empty for a constant boundary
    int v;
  };
  const Rational h(1, 2), t(2, 3);
  std::vector<Raw> raw = {
      {{2, 1}, {1}, {}, h, {1, 1}, 0},
      {{2, 1}, {1}, {1, 2}, t, {2, 2}, 0},
      {{3, 2, 1}, {2, 1}, {}, h, {1, 1, 1}, 0},
      {{3, 2, 1}, {2, 1}, {1, 0, 1}, t, {1, 2, 1}, 0},
      {{3, 3, 3}, {2, 2}, {}, t, {}, 2},
      {{3, 3, 3}, {2, 2}, {1, 0, 1}, t, {}, 2},
      {{4, 4, 3, 2}, {2, 1}, {}, h, {}, 1},
      {{4, 4, 3, 2}, {2, 1}, {1, 0, 2, 0}, t, {}, 1},
      {{3, 3, 2}, {2, 1}, {}, h, {}, 2},
      {{3, 3, 2}, {2, 1}, {1, 0, 1}, t, {}, 2},
      {{4, 3, 2, 1}, {2, 1}, {0, 1}, h, {}, 1},
      {{2, 1}, {}, {}, h, {}, 2},
  };
  std::vector<IntertwineInstance> out;
  for (const Raw& r : raw) {
    Diagram lambda(r.lambda), mu(r.mu);
    SkewShape shape(lambda, mu);
    CellArray sigma = r.n.empty() ? constant_boundary(shape, r.v) : diagonal_boundary(r.n);
    out.push_back({lambda, mu, r.alpha, r.q, sigma});
  }
  return out;
}

namespace {

const std::vector<Rational>& grid_qs() {
  static const std::vector<Rational> qs = {Rational(1, 2), Rational(2, 3), Rational(3, 5)};
  return qs;
}

const std::vector<std::vector<int>>& grid_alphas() {
  static const std::vector<std::vector<int>> as = {{}, {1, 0, 2}, {2, 1, 0}};
  return as;
}

std::vector<IntVec> box(int r, int nmax) {
  std::vector<IntVec> out;
  IntVec v(r, 0);
  while (true) {
    out.push_back(v);
    int t = 0;
    while (t < r && v[t] == nmax) v[t++] = 0;
    if (t == r) break;
    ++v[t];
  }
  return out;
}

json drift_json(const Drift& d, int r) {
  return {{"q", to_string(d.q())}, {"alpha", d.alpha()}, {"r", r}};
}

CheckResult from_sweep(const std::string& name, const SweepResult& s, const SuiteOptions& o) {
  CheckResult c{name, {{"trials", s.trials}, {"seed", o.seed}}, s.failures, s.pass()};
  c.extra["failures"] = s.failures;
  c.extra["failed"] = s.failed;
  return c;
}

}  // namespace

std::vector<CheckResult> suite_toda() {
  std::vector<CheckResult> out;
  for (const Rational& q : grid_qs())
    for (const auto& alpha : grid_alphas()) {
      Drift d(q, alpha);
      CoeffTable table(d);
      for (int r = 1; r <= 3; ++r) {
        Rational worst = 0;
        for (const IntVec& n : box(r, 3)) worst = std::max(worst, Rational(abs(toda_residual(n, table))));
        out.push_back({"toda_residual", drift_json(d, r), worst, worst == 0});
      }
      for (int r = 1; r <= 2; ++r) {
        Rational worst = 0;
        for (auto& [m, c] : series_residual(r, 3, d)) worst = std::max(worst, Rational(abs(c)));
        out.push_back({"series_residual", drift_json(d, r), worst, worst == 0});
      }
    }
  return out;
}

std::vector<CheckResult> suite_oracles() {
  std::vector<CheckResult> out;
  for (const Rational& q : grid_qs())
    for (const auto& alpha : grid_alphas()) {
      Drift d(q, alpha);
      CoeffTable table(d);
      for (int r = 1; r <= 3; ++r) {
        Rational worst = 0;
        for (const IntVec& n : box(r, 3)) worst = std::max(worst, Rational(abs(coeff_direct(n, d) - table.get(n))));
        out.push_back({"coefficient_oracles", drift_json(d, r), worst, worst == 0});
      }
    }
  return out;
}

std::vector<CheckResult> suite_rank_step() {
  std::vector<CheckResult> out;
  for (const Rational& q : grid_qs())
    for (const auto& alpha : grid_alphas()) {
      Drift d(q, alpha);
      for (int r = 1; r <= 3; ++r) {
        Rational disc = rank_step_discrepancy(r, 3, d);
        out.push_back({"operator_identity", drift_json(d, r), disc, disc == 0});
        int bad = kernel_adjoint_failures(r, 3, d);
        out.push_back({"kernel_adjoint", drift_json(d, r), bad, bad == 0});
      }
    }
  return out;
}

namespace {

json instance_json(const IntertwineInstance& in) {
  json j = shape_json(in.lambda, in.mu, in.alpha, in.q);
  j["sigma"] = rows_json(in.sigma);
  return j;
}

}  // namespace

std::vector<CheckResult> suite_intertwine(const std::vector<IntertwineInstance>& instances) {
  std::vector<CheckResult> out;
  for (const auto& in : instances) {
    SkewShape shape(in.lambda, in.mu);
    IntertwiningReport rep = intertwining_check(shape, in.sigma, Drift(in.q, in.alpha));
    Rational worst = std::max({rep.d_hlg, rep.d_ha, rep.d_llg, rep.d_doob, rep.d_doob_skew});
    CheckResult c{"intertwining", instance_json(in), worst, rep.pass()};
    c.extra["d_hlg"] = to_string(rep.d_hlg);
    c.extra["d_ha"] = to_string(rep.d_ha);
    c.extra["d_llg"] = to_string(rep.d_llg);
    if (rep.staircase) {
      c.extra["d_doob"] = to_string(rep.d_doob);
      c.extra["d_doob_skew"] = to_string(rep.d_doob_skew);
    }
    c.extra["boundary_states"] = rep.boundary_states;
    c.extra["full_states"] = rep.full_states;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<CheckResult> suite_hamiltonian(const std::vector<IntertwineInstance>& instances) {
  std::vector<CheckResult> out;
  for (const auto& in : instances) {
    SkewShape shape(in.lambda, in.mu);
    Drift d(in.q, in.alpha);
    std::vector<CellArray> bs = downset(shape, in.sigma, d);
    LinearOp H = boundary_hamiltonian(shape, d, bs);
    std::vector<Rational> A;
    for (const CellArray& s : bs) A.push_back(fiber_mass(shape, s, d));
    Rational disc = max_abs(H.m.apply(A));
    out.push_back({"hamiltonian_annihilates_mass", instance_json(in), disc, disc == 0});
  }
  return out;
}

std::vector<CheckResult> suite_seq_lemma(const SuiteOptions& o) {
  return {from_sweep("sequence_identity", sweep_seq_lemma(o.trials, o.seed), o)};
}

std::vector<CheckResult> suite_lemma53(const SuiteOptions& o) {
  return {from_sweep("boundary_rate_forms", sweep_lemma53(o.trials, o.seed), o)};
}

std::vector<CheckResult> suite_ok31(const SuiteOptions& o) {
  return {from_sweep("rate_balance", sweep_ok31(o.trials, o.seed), o)};
}

std::vector<CheckResult> suite_limits() {
  std::vector<CheckResult> out;
  // relative: gap measured against max(1, |target|)
  auto add = [&](const std::string& name, json inst, const std::vector<LimitPoint>& pts, bool relative = false) {
    bool mono = true;
    json gaps = json::array();
    for (size_t k = 0; k < pts.size(); ++k) {
      gaps.push_back(pts[k].gap);
      if (k > 0 && pts[k].gap > pts[k - 1].gap) mono = false;
    }
    double last = pts.back().gap;
    if (relative) last /= std::max(1.0, std::fabs(pts.back().target));
    CheckResult c{name, std::move(inst), Rational(last), mono && last < 1e-2};
    c.extra["gaps"] = gaps;
    c.extra["target"] = pts.back().target;
    out.push_back(std::move(c));
  };
  for (int r = 1; r <= 2; ++r)
    for (const IntVec& n : box(r, 4)) {
      int total = 0;
      for (int x : n) total += x;
      if (total > 4) continue;
      add("coefficient_limit", {{"n", n}}, limit_coeff(n, 4, 10));
      for (int i = 1; i <= r; ++i)
        if (n[i - 1] > 0) add("doob_limit", {{"n", n}, {"i", i}}, limit_doob(n, i, 4, 10), true);
    }
  struct P {
    std::vector<int> lambda, mu, alpha;
    int v;
  };
  for (const P& p : std::vector<P>{{{3, 2, 1}, {2, 1}, {}, 1},
                                   {{3, 2, 1}, {2, 1}, {}, 2},
                                   {{3, 3, 3}, {2, 2}, {1, 0, 1}, 1},
                                   {{4, 4, 3, 2}, {2, 1}, {1, 0, 2, 0}, 1},
                                   {{4, 4, 3, 2}, {2, 1}, {1, 0, 2, 0}, 2},
                                   {{3, 3, 2}, {2, 1}, {0, 1}, 1}}) {
    SkewShape shape{Diagram(p.lambda), Diagram(p.mu)};
    CellArray sigma = constant_boundary(shape, p.v);
    json inst = {{"lambda", p.lambda}, {"mu", p.mu}, {"alpha", p.alpha}, {"sigma", rows_json(sigma)}};
    add("potential_limit", std::move(inst), limit_potential(shape, sigma, p.alpha, 4, 10), true);
  }
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"toda",    "oracles",  "rank_step", "intertwine",
                                                 "hamiltonian", "identities", "seq_lemma", "lemma53",
                                                 "ok31",    "limits"};
  return names;
}

std::vector<CheckResult> run_suite(const std::string& name, const SuiteOptions& o) {
  if (name == "toda") return suite_toda();
  if (name == "oracles") return suite_oracles();
  if (name == "rank_step") return suite_rank_step();
  if (name == "intertwine") return suite_intertwine(intertwine_instances());
  if (name == "hamiltonian") return suite_hamiltonian(intertwine_instances());
  if (name == "seq_lemma") return suite_seq_lemma(o);
  if (name == "lemma53") return suite_lemma53(o);
  if (name == "ok31") return suite_ok31(o);
  if (name == "limits") return suite_limits();
  if (name == "identities") {
    auto out = suite_seq_lemma(o);
    for (auto& c : suite_ok31(o)) out.push_back(std::move(c));
    SuiteOptions l = o;
    l.trials = std::max(1, o.trials * 2 / 5);
    for (auto& c : suite_lemma53(l)) out.push_back(std::move(c));
    return out;
  }
  throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace qtoda::cli
