// Whittaker coefficients, the Toda difference operator, Doob rates and weights.
#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <vector>

#include "qtoda/arrays.hpp"
#include "qtoda/qnum.hpp"
#include "qtoda/shapes.hpp"

namespace qtoda {

using IntVec = std::vector<int>;

// Sum over Pi^{r,alpha}_n of the drifted Labelle weight.
Rational coeff_direct(const IntVec& n, const Drift& drift);

// q_{r,alpha}(n,k), with k_0 = k_r = 0
Rational kernel(const IntVec& n, const IntVec& k, const Drift& drift);
// q^{sum k_i(k_i - k_{i+1})} prod z_i^{k_i}
Rational kernel_weight(const IntVec& k, const Drift& drift);

// Memoised coefficients through the one-step recursion.
class CoeffTable {
 public:
  explicit CoeffTable(Drift drift) : drift_(std::move(drift)) {}
  const Drift& drift() const { return drift_; }
  Rational get(const IntVec& n);

 private:
  Rational compute(const IntVec& n);
  Drift drift_;
  std::map<IntVec, Rational> memo_;
  std::recursive_mutex mu_;
};

Rational coeff_recursive(const IntVec& n, const Drift& drift);

using GridFn = std::function<Rational(const IntVec&)>;

// (h^{r,alpha} f)(n); shift terms with n_i = 0 vanish
Rational apply_h(const IntVec& n, const Drift& drift, const GridFn& f);
// adjoint of h^{r,alpha} under the weighted inner product
Rational apply_h_adjoint(const IntVec& k, const Drift& drift, const GridFn& g);
// (q_r f)(n) = sum_{k <= n} kernel_weight(k) kernel(n,k) f(k)
Rational apply_q(const IntVec& n, const Drift& drift, const GridFn& f);

Rational toda_residual(const IntVec& n, CoeffTable& table);
Rational toda_residual(const IntVec& n, const Drift& drift);

// rate_i = q^{n_{i+1}-n_i} z_{i,r} a(n-e_i)/a(n)
std::vector<Rational> doob_rates(const IntVec& n, CoeffTable& table);

// Weights on full arrays of lambda.
Rational skew_weight(const CellArray& pi, const SkewShape& shape, const Drift& drift);
// binomial form on delta_{r+1}, mu = delta_r, no drift
Rational staircase_binomial_weight(const CellArray& pi, const Drift& drift);
// q^{sum pi(pi - pi_{i+1,j-1})} prod z_i^pi w_r(pi): numerator of K^r_n
Rational staircase_pochhammer_weight(const CellArray& pi, const Drift& drift);

enum class WeightForm { skew, staircase_binomial, staircase_pochhammer };

struct WeightedEnsemble {
  std::vector<CellArray> members;
  std::vector<Rational> weights;
  Rational normalizer = 0;
  Rational probability(size_t k) const { return weights[k] / normalizer; }
};

WeightedEnsemble ensemble(const SkewShape& shape, const CellArray& sigma, const Drift& drift,
                          WeightForm form = WeightForm::skew);

// Coefficients of H^alpha applied to the truncated series sum_{n <= cap} a_r(n) y^n,
// restricted to monomials with every exponent <= cap - 1.
std::map<IntVec, Rational> series_residual(int r, int cap, const Drift& drift);

// q -> 1 probes at q_j = 1 - 2^{-j}
struct LimitPoint {
  int j = 0;
  double q = 0;
  double scaled = 0;
  double target = 0;
  double gap = 0;
};

// Classical coefficient: sum over Pi^r_n of prod 1/((pi-pi_up)!(pi-pi_left)!)
Rational classical_coeff(const IntVec& n);
std::vector<LimitPoint> limit_coeff(const IntVec& n, int j_from, int j_to);
// (1-q)^{-2} times the Doob rate of coordinate i (1-based), no drift
std::vector<LimitPoint> limit_doob(const IntVec& n, int i, int j_from, int j_to);
// (1-q)^{-2} V(sigma)
std::vector<LimitPoint> limit_potential(const SkewShape& shape, const CellArray& sigma,
                                        const std::vector<int>& alpha, int j_from, int j_to);
double classical_potential(const SkewShape& shape, const CellArray& sigma, const Drift& drift);

}  // namespace qtoda
