#include "qtoda/arrays.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>

namespace qtoda {

CellArray::CellArray(Diagram lambda, Diagram mu) : lambda_(std::move(lambda)), mu_(std::move(mu)) {
  v_.assign(lambda_.size(), 0);
}

CellArray::CellArray(Diagram lambda, Diagram mu, std::vector<int> values)
    : lambda_(std::move(lambda)), mu_(std::move(mu)), v_(std::move(values)) {
  if (static_cast<int>(v_.size()) != lambda_.size()) throw std::invalid_argument("value count does not match shape");
}

std::vector<Cell> CellArray::cells() const {
  std::vector<Cell> out;
  for (Cell c : lambda_.cells())
    if (!mu_.contains(c)) out.push_back(c);
  return out;
}

Validation validate(const CellArray& a, const Drift& drift) {
  for (Cell c : a.cells()) {
    int v = a.at(c);
    long lo = std::max<long>(a.at(c.i, c.j - 1), a.at(c.i - 1, c.j) - drift.beta(c.i, c.j));
    if (v < 0 || v < lo) return {false, c};
  }
  for (Cell c : a.mu().cells())
    if (a.at(c) != 0) return {false, c};
  return {};
}

CellArray restrict_to(const CellArray& full, const SkewShape& shape) {
  CellArray out(shape.lambda(), shape.mu());
  for (Cell c : out.cells()) out.set(c, full.at(c));
  return out;
}

std::vector<int> outer_diagonal(const CellArray& a) {
  int r = a.lambda().length();
  std::vector<int> n(r);
  for (int i = 1; i <= r; ++i) n[i - 1] = a.at(i, r - i + 1);
  return n;
}

namespace {

// Fill `free` cells (row-major) of `base` so the full array is valid.
// Every free cell must have its right and lower neighbours in lambda.
std::vector<CellArray> fill(const CellArray& base, const std::vector<Cell>& free, const Drift& drift) {
  const Diagram& lam = base.lambda();
  std::vector<char> is_free(lam.size(), 0);
  for (Cell c : free) is_free[lam.index(c)] = 1;
  // static upper bounds, propagated back from fixed cells
  std::vector<long> ub(lam.size(), LONG_MAX);
  for (auto it = free.rbegin(); it != free.rend(); ++it) {
    Cell c = *it;
    long b = LONG_MAX;
    Cell rt{c.i, c.j + 1}, dn{c.i + 1, c.j};
    if (lam.contains(rt)) b = std::min(b, is_free[lam.index(rt)] ? ub[lam.index(rt)] : base.at(rt));
    if (lam.contains(dn)) {
      long d = is_free[lam.index(dn)] ? ub[lam.index(dn)] : base.at(dn);
      if (d != LONG_MAX) b = std::min(b, d + drift.beta(dn.i, dn.j));
    }
    if (b == LONG_MAX) throw std::logic_error("free cell without an upper bound");
    ub[lam.index(c)] = b;
  }
  std::vector<CellArray> out;
  CellArray cur = base;
  auto rec = [&](auto&& self, size_t k) -> void {
    if (k == free.size()) {
      if (validate(cur, drift).ok) out.push_back(cur);
      return;
    }
    Cell c = free[k];
    long lo = std::max<long>({0L, cur.at(c.i, c.j - 1), cur.at(c.i - 1, c.j) - drift.beta(c.i, c.j)});
    long hi = ub[lam.index(c)];
    for (long v = lo; v <= hi; ++v) {
      cur.set(c, static_cast<int>(v));
      self(self, k + 1);
    }
    cur.set(c, 0);
  };
  rec(rec, 0);
  return out;
}

}  // namespace

std::vector<CellArray> enumerate_fiber(const std::vector<int>& n, const Drift& drift) {
  int r = static_cast<int>(n.size());
  if (r < 1) throw std::invalid_argument("empty diagonal");
  for (int x : n)
    if (x < 0) return {};
  Diagram lam = staircase(r + 1);
  CellArray base(lam);
  std::vector<Cell> free;
  for (Cell c : lam.cells()) {
    if (c.i + c.j == r + 1)
      base.set(c, n[c.i - 1]);
    else
      free.push_back(c);
  }
  return fill(base, free, drift);
}

std::vector<CellArray> enumerate_fiber(const SkewShape& shape, const CellArray& sigma, const Drift& drift) {
  CellArray base(shape.lambda());
  for (Cell c : shape.skew_cells()) base.set(c, sigma.at(c));
  return fill(base, shape.mu().cells(), drift);
}

std::vector<CellArray> downset(const SkewShape& shape, const CellArray& sigma, const Drift& drift) {
  std::vector<Cell> cells = shape.skew_cells();
  std::vector<CellArray> out;
  CellArray cur(shape.lambda(), shape.mu());
  auto rec = [&](auto&& self, size_t k) -> void {
    if (k == cells.size()) {
      out.push_back(cur);
      return;
    }
    Cell c = cells[k];
    long lo = std::max<long>({0L, cur.at(c.i, c.j - 1), cur.at(c.i - 1, c.j) - drift.beta(c.i, c.j)});
    for (long v = lo; v <= sigma.at(c); ++v) {
      cur.set(c, static_cast<int>(v));
      self(self, k + 1);
    }
    cur.set(c, 0);
  };
  rec(rec, 0);
  return out;
}

std::vector<CellArray> downset_full(const CellArray& top, const Drift& drift) {
  std::vector<Cell> cells = top.cells();
  std::vector<CellArray> out;
  CellArray cur(top.lambda(), top.mu());
  auto rec = [&](auto&& self, size_t k) -> void {
    if (k == cells.size()) {
      out.push_back(cur);
      return;
    }
    Cell c = cells[k];
    long lo = std::max<long>({0L, cur.at(c.i, c.j - 1), cur.at(c.i - 1, c.j) - drift.beta(c.i, c.j)});
    for (long v = lo; v <= top.at(c); ++v) {
      cur.set(c, static_cast<int>(v));
      self(self, k + 1);
    }
    cur.set(c, 0);
  };
  rec(rec, 0);
  return out;
}

CellArray diagonal_boundary(const std::vector<int>& n) {
  int r = static_cast<int>(n.size());
  CellArray out(staircase(r + 1), staircase(r));
  for (int i = 1; i <= r; ++i) out.set({i, r - i + 1}, n[i - 1]);
  return out;
}

}  // namespace qtoda
