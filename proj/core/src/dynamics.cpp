#include "qtoda/dynamics.hpp"

#include <map>
#include <stdexcept>

#include "qtoda/toda.hpp"

namespace qtoda {

RateVariant RateVariant::basic(int r, const Rational& q) {
  return RateVariant(RateKind::basic_staircase, SkewShape(staircase(r + 1), Diagram()), Drift(q));
}

RateVariant RateVariant::staircase_drift(int r, const Drift& drift) {
  return RateVariant(RateKind::drift_staircase, SkewShape(staircase(r + 1), Diagram()), drift);
}

RateVariant RateVariant::full(const SkewShape& shape, const Drift& drift) {
  return RateVariant(RateKind::skew_full, shape, drift);
}

RateVariant RateVariant::boundary(const SkewShape& shape, const Drift& drift) {
  return RateVariant(RateKind::skew_boundary, shape, drift);
}

std::vector<Cell> RateVariant::cells() const {
  return kind == RateKind::skew_boundary ? shape.skew_cells() : shape.lambda().cells();
}

const char* RateVariant::name() const {
  switch (kind) {
    case RateKind::basic_staircase: return "basic_staircase";
    case RateKind::drift_staircase: return "drift_staircase";
    case RateKind::skew_full: return "skew_full";
    case RateKind::skew_boundary: return "skew_boundary";
  }
  return "";
}

Rational jump_rate(const CellArray& pi, Cell c, const RateVariant& v) {
  bool boundary = v.kind == RateKind::skew_boundary;
  if (boundary ? !v.shape.in_skew(c) : !v.shape.lambda().contains(c))
    throw std::out_of_range("cell outside the shape");
  const Drift& d = v.drift;
  int i = c.i, j = c.j;
  long p = pi.at(c);
  long left = pi.at(i, j - 1);
  if (p == left) return 0;
  long up = pi.at(i - 1, j);
  if (v.kind == RateKind::basic_staircase) {
    const Rational& q = d.q();
    return qpow(q, pi.at(i + 1, j - 1) - p) * (1 - qpow(q, p - left)) * (1 - qpow(q, p - up));
  }
  int L = v.shape.lambda().length();
  Rational base = d.z(i, L) * (1 - d.qp(p - left)) * (1 - d.z(i - 1, i + j - 1) * d.qp(p - up));
  if (base == 0) return 0;
  if (in_vert(v.shape, c)) return base * d.qp(left - p - d.beta(i + 1, j - 1));
  return base * d.qp(pi.at(i + 1, j - 1) - p);
}

Rational adjoint_rate(const CellArray& pi, Cell c, const SkewShape& shape, const Drift& d) {
  int i = c.i, j = c.j;
  long p = pi.at(c);
  int L = shape.lambda().length();
  return d.z(i - 1, L) * d.qp(p - pi.at(i - 1, j + 1)) * (1 - d.qp(pi.at(i, j + 1) - p)) *
         (1 - d.z(i, i + j) * d.qp(pi.at(i + 1, j) - p));
}

Rational potential(const CellArray& s, const SkewShape& shape, const Drift& d) {
  int L = shape.lambda().length();
  Rational v = 0;
  for (Cell c : special_sets(shape).corners) {
    int i = c.i, j = c.j;
    Rational t = d.z(i, L) * d.z(i - 1, i + j) * (1 - d.qp(s.at(i, j + 1))) * (1 - d.qp(s.at(i + 1, j)));
    if (in_hor(shape, c)) t *= d.qp(-s.at(i - 1, j + 1));
    v += t;
  }
  for (int i = 1; i <= shape.mu().length(); ++i) {
    int m = shape.mu().part(i);
    Rational t = d.z(i - 1, L) * (1 - d.z(i, i + m)) * (1 - d.qp(s.at(i, m + 1)));
    if (in_hor(shape, {i, m})) t *= d.qp(-s.at(i - 1, m + 1));
    v += t;
  }
  return v;
}

namespace {

std::map<std::vector<int>, size_t> index_states(const std::vector<CellArray>& states) {
  std::map<std::vector<int>, size_t> idx;
  for (size_t k = 0; k < states.size(); ++k) idx.emplace(states[k].values(), k);
  return idx;
}

}  // namespace

LinearOp generator_matrix(const RateVariant& v, const std::vector<CellArray>& states) {
  LinearOp op{states, states, SparseMatrix(states.size(), states.size())};
  auto idx = index_states(states);
  std::vector<Cell> cells = v.cells();
  for (size_t a = 0; a < states.size(); ++a) {
    for (Cell c : cells) {
      Rational rt = jump_rate(states[a], c, v);
      if (rt == 0) continue;
      CellArray next = states[a];
      next.add(c, -1);
      auto it = idx.find(next.values());
      if (it == idx.end()) throw std::invalid_argument("state list is not closed under decrements");
      op.m.add(a, it->second, rt);
      op.m.add(a, a, -rt);
    }
  }
  return op;
}

LinearOp boundary_hamiltonian(const SkewShape& shape, const Drift& drift, const std::vector<CellArray>& states) {
  LinearOp op = generator_matrix(RateVariant::boundary(shape, drift), states);
  for (size_t a = 0; a < states.size(); ++a) op.m.add(a, a, potential(states[a], shape, drift));
  return op;
}

Rational fiber_mass(const SkewShape& shape, const CellArray& sigma, const Drift& drift) {
  Rational a = 0;
  for (const CellArray& pi : enumerate_fiber(shape, sigma, drift)) a += skew_weight(pi, shape, drift);
  return a;
}

LinearOp lambda_kernel(const SkewShape& shape, const Drift& drift, const std::vector<CellArray>& boundary_states,
                       bool normalized) {
  std::vector<std::vector<CellArray>> fibers;
  std::vector<CellArray> cols;
  for (const CellArray& s : boundary_states) {
    fibers.push_back(enumerate_fiber(shape, s, drift));
    cols.insert(cols.end(), fibers.back().begin(), fibers.back().end());
  }
  LinearOp op{boundary_states, cols, SparseMatrix(boundary_states.size(), cols.size())};
  size_t col = 0;
  for (size_t a = 0; a < boundary_states.size(); ++a) {
    std::vector<Rational> w;
    Rational total = 0;
    for (const CellArray& pi : fibers[a]) {
      w.push_back(skew_weight(pi, shape, drift));
      total += w.back();
    }
    for (size_t k = 0; k < w.size(); ++k, ++col) op.m.add(a, col, normalized ? Rational(w[k] / total) : w[k]);
  }
  return op;
}

}  // namespace qtoda
