// Exact operator identities: intertwinings, rank-step operator identity, lemmas.
#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "qtoda/arrays.hpp"
#include "qtoda/dynamics.hpp"
#include "qtoda/qnum.hpp"
#include "qtoda/shapes.hpp"

namespace qtoda {

struct IntertwiningReport {
  Rational d_hlg = 0;  // max |H Lambda - Lambda G|, unnormalized kernel
  Rational d_ha = 0;   // max |H A|
  Rational d_llg = 0;  // max |L Lambda~ - Lambda~ G|, L = A^{-1} H A
  size_t boundary_states = 0;
  size_t full_states = 0;
  // staircase shapes only: Doob generator of the coefficients on the same states
  bool staircase = false;
  Rational d_doob = 0;       // max |L_doob Lambda~ - Lambda~ G|
  Rational d_doob_skew = 0;  // max |L_doob - L|
  bool pass() const {
    return d_hlg == 0 && d_ha == 0 && d_llg == 0 && (!staircase || (d_doob == 0 && d_doob_skew == 0));
  }
};

IntertwiningReport intertwining_check(const SkewShape& shape, const CellArray& sigma, const Drift& drift);

// max |h^r q_r - z_r q_r h^{r-1}| on the grids {n <= (nmax,...)}, {k <= (nmax,...)};
// with_drift_factor = false drops z_r
Rational rank_step_discrepancy(int r, int nmax, const Drift& drift, bool with_drift_factor = true);

// number of (n, k) on [0,nmax] grids where h^r_n q(n,k) != z_r (h^{r-1})^*_k q(n,k)
int kernel_adjoint_failures(int r, int nmax, const Drift& drift);

// Finitely supported integer sequence: values[t] sits at index offset + t.
struct IntSeq {
  int offset = 0;
  std::vector<int> values;
  int at(int i) const {
    int t = i - offset;
    return (t >= 0 && t < static_cast<int>(values.size())) ? values[t] : 0;
  }
};

struct Sides {
  Rational lhs = 0;
  Rational rhs = 0;
  bool equal() const { return lhs == rhs; }
};

// both sides of the three-sequence identity, summed over the support widened by `margin`
Sides seq_lemma(const IntSeq& a, const IntSeq& b, const IntSeq& c, const Rational& q, int margin = 2);

struct Lemma53 {
  Rational direct = 0;
  Rational collapsed = 0;
  Rational expanded = 0;
};
// mu = delta_{r+1} inside the interior of lambda, no drift; pi a full array on lambda
Lemma53 lemma53(const SkewShape& shape, const CellArray& pi, const Rational& q);

// sum_{lambda/mu}[b(pi) - b(sigma)] + V(sigma) against sum_mu [b'(pi) - b(pi)]
Sides ok31(const SkewShape& shape, const CellArray& pi, const Drift& drift);

// Randomized sweeps. Trial t draws from std::mt19937_64(seed ^ t).
struct SweepResult {
  int trials = 0;
  int failures = 0;
  std::vector<std::string> failed;  // descriptions of failing instances
  bool pass() const { return failures == 0; }
};

// random partition with 1 <= |lambda| <= max_size
Diagram random_partition(std::mt19937_64& rng, int max_size);
// random subdiagram of the interior of lambda (may be empty)
Diagram random_interior_subdiagram(const Diagram& lambda, std::mt19937_64& rng);
// valid full array: each cell gets its lower bound plus a uniform draw from [0, max(0, cap - bound)]
CellArray random_array(const Diagram& lambda, const Drift& drift, std::mt19937_64& rng, int cap);

// sequences on width-`width` windows with values in [-3,3]
SweepResult sweep_seq_lemma(int trials, uint64_t seed, int width = 5);
// |lambda| <= max_size, values <= 3, random alpha and q
SweepResult sweep_ok31(int trials, uint64_t seed, int max_size = 16);
// mu = delta_{r+1}, r <= max_r
SweepResult sweep_lemma53(int trials, uint64_t seed, int max_r = 3);

}  // namespace qtoda
