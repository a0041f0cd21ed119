// Drift-constrained integer fillings of diagrams, fibers and down-sets.
#pragma once

#include <optional>
#include <vector>

#include "qtoda/qnum.hpp"
#include "qtoda/shapes.hpp"

namespace qtoda {

// A filling of lambda. When `mu` is nonempty the array is a boundary array on
// lambda/mu: the mu cells hold 0 and are not constrained.
class CellArray {
 public:
  CellArray() = default;
  explicit CellArray(Diagram lambda, Diagram mu = {});
  CellArray(Diagram lambda, Diagram mu, std::vector<int> values);

  const Diagram& lambda() const { return lambda_; }
  const Diagram& mu() const { return mu_; }
  bool is_boundary() const { return !mu_.empty(); }
  const std::vector<int>& values() const { return v_; }

  // zero-extended read
  int at(int i, int j) const {
    return lambda_.contains(i, j) ? v_[lambda_.index({i, j})] : 0;
  }
  int at(Cell c) const { return at(c.i, c.j); }
  void set(Cell c, int v) { v_[lambda_.index(c)] = v; }
  void add(Cell c, int d) { v_[lambda_.index(c)] += d; }
  // cells carrying free values: lambda, or lambda/mu for boundary arrays
  std::vector<Cell> cells() const;
  bool owns(Cell c) const { return lambda_.contains(c) && !mu_.contains(c); }

  bool operator==(const CellArray& o) const { return v_ == o.v_ && lambda_ == o.lambda_ && mu_ == o.mu_; }
  bool operator<(const CellArray& o) const { return v_ < o.v_; }

 private:
  Diagram lambda_;
  Diagram mu_;
  std::vector<int> v_;
};

struct Validation {
  bool ok = true;
  std::optional<Cell> first_bad;
};

// pi_ij >= max(pi_{i,j-1}, pi_{i-1,j} - beta_ij) at every owned cell, and values >= 0
Validation validate(const CellArray& a, const Drift& drift);

// full array restricted to lambda/mu (mu cells zeroed)
CellArray restrict_to(const CellArray& full, const SkewShape& shape);

// outer diagonal (pi_{i,r-i+1})_{i=1..r} of an array on delta_{r+1}
std::vector<int> outer_diagonal(const CellArray& a);

// Pi^{r,alpha}_n: arrays on delta_{r+1} with outer diagonal n
std::vector<CellArray> enumerate_fiber(const std::vector<int>& n, const Drift& drift);
// Pi^{lambda,alpha}_sigma: full arrays on lambda agreeing with sigma on lambda/mu
std::vector<CellArray> enumerate_fiber(const SkewShape& shape, const CellArray& sigma, const Drift& drift);

// all valid boundary arrays below sigma componentwise, ascending order
std::vector<CellArray> downset(const SkewShape& shape, const CellArray& sigma, const Drift& drift);

// all valid full arrays below `top` componentwise (for staircase state spaces)
std::vector<CellArray> downset_full(const CellArray& top, const Drift& drift);

// boundary array of delta_{r+1}/delta_r with outer diagonal n
CellArray diagonal_boundary(const std::vector<int>& n);

}  // namespace qtoda
