// Exact sparse matrices.
#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "qtoda/qnum.hpp"

namespace qtoda {

class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(size_t rows, size_t cols) : cols_(cols), rows_(rows) {}

  size_t rows() const { return rows_.size(); }
  size_t cols() const { return cols_; }
  void add(size_t i, size_t j, const Rational& v);
  Rational get(size_t i, size_t j) const;
  const std::map<size_t, Rational>& row(size_t i) const { return rows_[i]; }
  Rational row_sum(size_t i) const;

  SparseMatrix operator*(const SparseMatrix& o) const;
  SparseMatrix operator-(const SparseMatrix& o) const;
  SparseMatrix scaled(const Rational& s) const;
  std::vector<Rational> apply(const std::vector<Rational>& x) const;
  // largest |entry|, 0 for the zero matrix
  Rational max_abs() const;
  size_t nonzeros() const;

 private:
  size_t cols_ = 0;
  std::vector<std::map<size_t, Rational>> rows_;
};

Rational max_abs(const std::vector<Rational>& v);

}  // namespace qtoda
