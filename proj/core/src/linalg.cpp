#include "qtoda/linalg.hpp"

#include <stdexcept>

namespace qtoda {

void SparseMatrix::add(size_t i, size_t j, const Rational& v) {
  if (v == 0) return;
  auto& row = rows_[i];
  auto it = row.find(j);
  if (it == row.end()) {
    row.emplace(j, v);
  } else {
    it->second += v;
    if (it->second == 0) row.erase(it);
  }
}

Rational SparseMatrix::get(size_t i, size_t j) const {
  auto it = rows_[i].find(j);
  return it == rows_[i].end() ? Rational(0) : it->second;
}

Rational SparseMatrix::row_sum(size_t i) const {
  Rational s = 0;
  for (const auto& [j, v] : rows_[i]) s += v;
  return s;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const {
  if (cols_ != o.rows()) throw std::invalid_argument("matrix shape mismatch");
  SparseMatrix out(rows(), o.cols());
  Rational t;
  for (size_t i = 0; i < rows(); ++i) {
    for (const auto& [k, v] : rows_[i]) {
      for (const auto& [j, w] : o.rows_[k]) {
        t = v * w;
        out.add(i, j, t);
      }
    }
  }
  return out;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& o) const {
  if (rows() != o.rows() || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  SparseMatrix out = *this;
  for (size_t i = 0; i < rows(); ++i)
    for (const auto& [j, v] : o.rows_[i]) out.add(i, j, -v);
  return out;
}

SparseMatrix SparseMatrix::scaled(const Rational& s) const {
  SparseMatrix out(rows(), cols_);
  for (size_t i = 0; i < rows(); ++i)
    for (const auto& [j, v] : rows_[i]) out.add(i, j, v * s);
  return out;
}

std::vector<Rational> SparseMatrix::apply(const std::vector<Rational>& x) const {
  if (x.size() != cols_) throw std::invalid_argument("vector length mismatch");
  std::vector<Rational> y(rows(), Rational(0));
  for (size_t i = 0; i < rows(); ++i)
    for (const auto& [j, v] : rows_[i]) y[i] += v * x[j];
  return y;
}

Rational SparseMatrix::max_abs() const {
  Rational m = 0;
  for (const auto& row : rows_)
    for (const auto& [j, v] : row)
      if (abs(v) > m) m = abs(v);
  return m;
}

size_t SparseMatrix::nonzeros() const {
  size_t n = 0;
  for (const auto& row : rows_) n += row.size();
  return n;
}

Rational max_abs(const std::vector<Rational>& v) {
  Rational m = 0;
  for (const auto& x : v)
    if (abs(x) > m) m = abs(x);
  return m;
}

}  // namespace qtoda
