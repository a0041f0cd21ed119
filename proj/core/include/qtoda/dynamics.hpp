// Jump rates, potentials, generator matrices and the Lambda kernel.
#pragma once

#include <vector>

#include "qtoda/arrays.hpp"
#include "qtoda/linalg.hpp"
#include "qtoda/qnum.hpp"
#include "qtoda/shapes.hpp"

namespace qtoda {

enum class RateKind { basic_staircase, drift_staircase, skew_full, skew_boundary };

struct RateVariant {
  RateVariant(RateKind kind, SkewShape shape, Drift drift)
      : kind(kind), shape(std::move(shape)), drift(std::move(drift)) {}

  RateKind kind;
  SkewShape shape;
  Drift drift;

  static RateVariant basic(int r, const Rational& q);
  static RateVariant staircase_drift(int r, const Drift& drift);
  static RateVariant full(const SkewShape& shape, const Drift& drift);
  static RateVariant boundary(const SkewShape& shape, const Drift& drift);

  // cells carrying a clock
  std::vector<Cell> cells() const;
  const char* name() const;
};

// Clock rate at `cell`. Vert cells use z_{i,L} z_{i,i+j-1}^{-1} q^{pi_{i,j-1}-pi_ij},
// every other cell z_{i,L} q^{pi_{i+1,j-1}-pi_ij}, times
// (1 - q^{pi_ij - pi_{i,j-1}})(1 - z_{i-1,i+j-1} q^{pi_ij - pi_{i-1,j}}).
Rational jump_rate(const CellArray& state, Cell cell, const RateVariant& variant);

Rational adjoint_rate(const CellArray& state, Cell cell, const SkewShape& shape, const Drift& drift);

Rational potential(const CellArray& sigma, const SkewShape& shape, const Drift& drift);

struct LinearOp {
  std::vector<CellArray> row_states;
  std::vector<CellArray> col_states;
  SparseMatrix m;
};

// Generator on a decrement-closed state list; rows sum to 0.
LinearOp generator_matrix(const RateVariant& variant, const std::vector<CellArray>& states);
// G^{lambda/mu} + V on boundary states; rows sum to V(sigma).
LinearOp boundary_hamiltonian(const SkewShape& shape, const Drift& drift, const std::vector<CellArray>& states);

// Rows: boundary states. Columns: the union of their fibers, in row order.
// Entries are the weights W (unnormalized) or K = W / A (normalized).
LinearOp lambda_kernel(const SkewShape& shape, const Drift& drift, const std::vector<CellArray>& boundary_states,
                       bool normalized);

// A(sigma) = sum of W over the fiber of sigma
Rational fiber_mass(const SkewShape& shape, const CellArray& sigma, const Drift& drift);

}  // namespace qtoda
