#include "qtoda/checks.hpp"

#include <algorithm>
#include <stdexcept>

#include "qtoda/toda.hpp"

namespace qtoda {

namespace {

std::vector<IntVec> grid(int dim, int nmax) {
  std::vector<IntVec> out;
  IntVec v(dim, 0);
  while (true) {
    out.push_back(v);
    int t = 0;
    while (t < dim && v[t] == nmax) v[t++] = 0;
    if (t == dim) break;
    ++v[t];
  }
  return out;
}

size_t grid_index(const IntVec& v, int nmax) {
  size_t k = 0;
  for (size_t t = v.size(); t-- > 0;) k = k * (nmax + 1) + v[t];
  return k;
}

// matrix of f -> (h f) on the grid; h only lowers coordinates so the grid is closed
SparseMatrix h_matrix(int r, int nmax, const Drift& d) {
  auto pts = grid(r, nmax);
  SparseMatrix m(pts.size(), pts.size());
  for (size_t a = 0; a < pts.size(); ++a) {
    for (size_t b = 0; b < pts.size(); ++b) {
      Rational v = apply_h(pts[a], d, [&](const IntVec& x) { return Rational(x == pts[b] ? 1 : 0); });
      if (v != 0) m.add(a, b, v);
    }
  }
  return m;
}

}  // namespace

IntertwiningReport intertwining_check(const SkewShape& shape, const CellArray& sigma, const Drift& drift) {
  IntertwiningReport rep;
  std::vector<CellArray> bs = downset(shape, sigma, drift);
  LinearOp H = boundary_hamiltonian(shape, drift, bs);
  LinearOp W = lambda_kernel(shape, drift, bs, false);
  LinearOp K = lambda_kernel(shape, drift, bs, true);
  LinearOp G = generator_matrix(RateVariant::full(shape, drift), W.col_states);
  rep.boundary_states = bs.size();
  rep.full_states = W.col_states.size();

  std::vector<Rational> A(bs.size());
  for (size_t a = 0; a < bs.size(); ++a) A[a] = W.m.row_sum(a);

  rep.d_hlg = (H.m * W.m - W.m * G.m).max_abs();
  rep.d_ha = max_abs(H.m.apply(A));

  SparseMatrix L(bs.size(), bs.size());
  for (size_t a = 0; a < bs.size(); ++a)
    for (const auto& [b, v] : H.m.row(a)) L.add(a, b, v * A[b] / A[a]);
  SparseMatrix KG = K.m * G.m;
  rep.d_llg = (L * K.m - KG).max_abs();

  int r = shape.mu().length();
  if (r >= 1 && shape.lambda() == staircase(r + 2) && shape.mu() == staircase(r + 1)) {
    rep.staircase = true;
    CoeffTable table(drift);
    SparseMatrix Ld(bs.size(), bs.size());
    std::map<IntVec, size_t> idx;
    for (size_t a = 0; a < bs.size(); ++a) idx.emplace(outer_diagonal(bs[a]), a);
    for (size_t a = 0; a < bs.size(); ++a) {
      IntVec n = outer_diagonal(bs[a]);
      auto rates = doob_rates(n, table);
      for (size_t i = 0; i < n.size(); ++i) {
        if (rates[i] == 0) continue;
        IntVec m = n;
        --m[i];
        auto it = idx.find(m);
        if (it == idx.end()) throw std::logic_error("diagonal state missing from down-set");
        Ld.add(a, it->second, rates[i]);
        Ld.add(a, a, -rates[i]);
      }
    }
    rep.d_doob = (Ld * K.m - KG).max_abs();
    rep.d_doob_skew = (Ld - L).max_abs();
  }
  return rep;
}

Rational rank_step_discrepancy(int r, int nmax, const Drift& d, bool with_drift_factor) {
  if (r < 1) throw std::invalid_argument("r >= 1");
  auto ns = grid(r, nmax);
  auto ks = grid(r - 1, nmax);
  SparseMatrix Q(ns.size(), ks.size());
  for (size_t a = 0; a < ns.size(); ++a)
    for (size_t b = 0; b < ks.size(); ++b) {
      bool below = true;
      for (int t = 0; t < r - 1; ++t) below = below && ks[b][t] <= ns[a][t];
      if (!below) continue;
      Rational v = kernel_weight(ks[b], d) * kernel(ns[a], ks[b], d);
      if (v != 0) Q.add(grid_index(ns[a], nmax), grid_index(ks[b], nmax), v);
    }
  SparseMatrix lhs = h_matrix(r, nmax, d) * Q;
  SparseMatrix rhs = Q * h_matrix(r - 1, nmax, d);
  if (with_drift_factor) rhs = rhs.scaled(d.zk(r));
  return (lhs - rhs).max_abs();
}

int kernel_adjoint_failures(int r, int nmax, const Drift& d) {
  int bad = 0;
  for (const IntVec& n : grid(r, nmax))
    for (const IntVec& k : grid(r - 1, nmax)) {
      Rational lhs = apply_h(n, d, [&](const IntVec& m) { return kernel(m, k, d); });
      Rational rhs = d.zk(r) * apply_h_adjoint(k, d, [&](const IntVec& kk) { return kernel(n, kk, d); });
      if (lhs != rhs) ++bad;
    }
  return bad;
}

Sides seq_lemma(const IntSeq& a, const IntSeq& b, const IntSeq& c, const Rational& q, int margin) {
  int lo = std::min({a.offset, b.offset, c.offset}) - margin;
  int hi = std::max({a.offset + static_cast<int>(a.values.size()), b.offset + static_cast<int>(b.values.size()),
                     c.offset + static_cast<int>(c.values.size())}) +
           margin;
  auto p = [&](long e) { return qpow(q, e); };
  Sides s;
  for (int i = lo; i <= hi; ++i) {
    int ai = a.at(i), bi = b.at(i), ci = c.at(i);
    int a1 = a.at(i + 1), b1 = b.at(i + 1), b0 = b.at(i - 1), c0 = c.at(i - 1);
    s.lhs += (p(a1 - ai) - 1) * p(ci) - p(a1 - ai) * p(ci) * (1 - p(ai - bi)) * (1 - p(ai - b0) * p(c0));
    s.rhs += (p(b1 - bi) - 1) * p(ci) - p(bi - b0) * p(c0) * (1 - p(ai - bi)) * (1 - p(a1 - bi) * p(ci));
  }
  return s;
}

namespace {

Rational boundary_rate_sum(const SkewShape& shape, const CellArray& pi, const Drift& d) {
  CellArray sigma = restrict_to(pi, shape);
  RateVariant full = RateVariant::full(shape, d), bd = RateVariant::boundary(shape, d);
  Rational s = 0;
  for (Cell c : shape.skew_cells()) s += jump_rate(pi, c, full) - jump_rate(sigma, c, bd);
  return s;
}

}  // namespace

Lemma53 lemma53(const SkewShape& shape, const CellArray& pi, const Rational& q) {
  int r = shape.mu().length();
  if (r < 1 || !(shape.mu() == staircase(r + 1)))
    throw std::invalid_argument("lemma53 needs mu = delta_{r+1} with r >= 1");
  Drift d(q);
  if (!validate(pi, d).ok || pi.is_boundary()) throw std::invalid_argument("invalid array");
  auto p = [&](int i, int j) { return static_cast<long>(pi.at(i, j)); };
  auto qp = [&](long e) { return d.qp(e); };
  Lemma53 out;
  out.direct = boundary_rate_sum(shape, pi, d);

  for (Cell v : shape.skew_cells()) {
    int i = v.i, j = v.j;
    Cell up{i - 1, j}, left{i, j - 1};
    for (auto [u, w] : {std::pair{up, left}, std::pair{left, up}}) {
      if (!shape.in_mu(u)) continue;
      out.collapsed -= qp(p(i + 1, j - 1) - p(u.i, u.j)) * (1 - qp(p(u.i, u.j))) * (1 - qp(p(i, j) - p(w.i, w.j)));
    }
    if (shape.in_mu(up) && shape.in_mu(left))
      out.collapsed -= qp(p(i + 1, j - 1) + p(i, j) - p(i - 1, j) - p(i, j - 1)) * (1 - qp(p(i - 1, j))) *
                       (1 - qp(p(i, j - 1)));
  }

  out.expanded = Rational(r + 2) - qp(p(1, r + 1));
  for (Cell v : shape.skew_cells()) {
    int i = v.i, j = v.j;
    if (shape.in_mu({i - 1, j}) || shape.in_mu({i, j - 1}))
      out.expanded -= (1 - qp(p(i + 1, j - 1))) * (1 - qp(p(i, j)));
  }
  for (int i = 1; i <= r + 1; ++i) {
    int j = r + 2 - i;
    out.expanded -= qp(p(i + 1, j - 1) - p(i, j - 1)) + qp(p(i + 1, j - 1) - p(i - 1, j)) -
                    qp(p(i + 1, j - 1) + p(i, j) - p(i, j - 1) - p(i - 1, j));
  }
  return out;
}

Sides ok31(const SkewShape& shape, const CellArray& pi, const Drift& d) {
  if (!validate(pi, d).ok || pi.is_boundary()) throw std::invalid_argument("invalid array");
  Sides s;
  s.lhs = boundary_rate_sum(shape, pi, d) + potential(restrict_to(pi, shape), shape, d);
  RateVariant full = RateVariant::full(shape, d);
  for (Cell c : shape.mu().cells()) s.rhs += adjoint_rate(pi, c, shape, d) - jump_rate(pi, c, full);
  return s;
}

}  // namespace qtoda

namespace qtoda {

namespace {

int uniform_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

const Rational& random_q(std::mt19937_64& rng) {
  static const Rational qs[] = {Rational(1, 2), Rational(3, 5), Rational(2, 3)};
  return qs[uniform_int(rng, 0, 2)];
}

std::string describe(const SkewShape& shape, const CellArray& pi, const Drift& d) {
  std::string s = shape.lambda().str() + "/" + shape.mu().str() + " q=" + to_string(d.q()) + " alpha=";
  for (int a : d.alpha()) s += std::to_string(a) + ",";
  s += " pi=";
  for (int v : pi.values()) s += std::to_string(v) + ",";
  return s;
}

}  // namespace

Diagram random_partition(std::mt19937_64& rng, int max_size) {
  int size = uniform_int(rng, 1, max_size);
  std::vector<int> parts;
  int prev = size;
  while (size > 0) {
    int p = uniform_int(rng, 1, std::min(prev, size));
    parts.push_back(p);
    size -= p;
    prev = p;
  }
  std::sort(parts.rbegin(), parts.rend());
  return Diagram(parts);
}

Diagram random_interior_subdiagram(const Diagram& lambda, std::mt19937_64& rng) {
  std::vector<int> in;
  for (int i = 1; i <= lambda.length(); ++i) {
    int m = std::min(lambda.part(i) - 1, lambda.part(i + 1));
    if (m <= 0) break;
    in.push_back(m);
  }
  std::vector<int> mu;
  int prev = in.empty() ? 0 : in[0];
  for (int m : in) {
    int v = uniform_int(rng, 0, std::min(prev, m));
    if (v == 0) break;
    mu.push_back(v);
    prev = v;
  }
  return Diagram(mu);
}

CellArray random_array(const Diagram& lambda, const Drift& d, std::mt19937_64& rng, int cap) {
  CellArray pi(lambda);
  for (Cell c : lambda.cells()) {
    long lo = std::max<long>({0, pi.at(c.i, c.j - 1), pi.at(c.i - 1, c.j) - d.beta(c.i, c.j)});
    pi.set(c, static_cast<int>(lo + uniform_int(rng, 0, static_cast<int>(std::max<long>(0, cap - lo)))));
  }
  return pi;
}

SweepResult sweep_seq_lemma(int trials, uint64_t seed, int width) {
  SweepResult res;
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(seed ^ static_cast<uint64_t>(t));
    IntSeq s[3];
    for (IntSeq& x : s) {
      x.offset = uniform_int(rng, -2, 2);
      for (int k = 0; k < width; ++k) x.values.push_back(uniform_int(rng, -3, 3));
    }
    const Rational& q = random_q(rng);
    Sides a = seq_lemma(s[0], s[1], s[2], q, 2);
    Sides b = seq_lemma(s[0], s[1], s[2], q, 4);
    ++res.trials;
    if (!a.equal() || a.lhs != b.lhs || a.rhs != b.rhs) {
      ++res.failures;
      res.failed.push_back("trial " + std::to_string(t));
    }
  }
  return res;
}

SweepResult sweep_ok31(int trials, uint64_t seed, int max_size) {
  SweepResult res;
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(seed ^ static_cast<uint64_t>(t));
    Diagram lambda = random_partition(rng, max_size);
    Diagram mu;
    for (int k = 0; k < 8 && mu.empty(); ++k) mu = random_interior_subdiagram(lambda, rng);
    std::vector<int> alpha(lambda.length() + lambda.part(1));
    for (int& a : alpha) a = uniform_int(rng, 0, 2);
    Drift d(random_q(rng), alpha);
    SkewShape shape(lambda, mu);
    CellArray pi = random_array(lambda, d, rng, 3);
    ++res.trials;
    if (!ok31(shape, pi, d).equal()) {
      ++res.failures;
      res.failed.push_back(describe(shape, pi, d));
    }
  }
  return res;
}

SweepResult sweep_lemma53(int trials, uint64_t seed, int max_r) {
  SweepResult res;
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(seed ^ static_cast<uint64_t>(t));
    int r = uniform_int(rng, 1, max_r);
    // lambda contains delta_{r+3}, so delta_{r+1} sits in its interior
    std::vector<int> parts = staircase(r + 3).parts();
    int extra_rows = uniform_int(rng, 0, 1);
    for (int k = 0; k < extra_rows; ++k) parts.push_back(1);
    for (size_t i = parts.size(); i-- > 0;) {
      int room = (i == 0 ? parts[0] + 2 : parts[i - 1]) - parts[i];
      parts[i] += uniform_int(rng, 0, std::min(room, 1));
    }
    Diagram lambda(parts);
    SkewShape shape(lambda, staircase(r + 1));
    Drift d(random_q(rng));
    CellArray pi = random_array(lambda, d, rng, 3);
    Lemma53 l = lemma53(shape, pi, d.q());
    ++res.trials;
    if (l.direct != l.collapsed || l.direct != l.expanded) {
      ++res.failures;
      res.failed.push_back(describe(shape, pi, d));
    }
  }
  return res;
}

}  // namespace qtoda
