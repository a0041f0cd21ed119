// Exact rationals and q-series primitives.
#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace qtoda {

using Rational = mpq_class;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& x);
double to_double(const Rational& x);

// q^e for any integer e (q != 0).
Rational qpow(const Rational& q, long e);

// (a;q)_n = prod_{k<n} (1 - a q^k)
Rational q_pochhammer(const Rational& a, const Rational& q, long n);

// Gaussian binomial; 0 outside 0 <= k <= n.
Rational q_binomial(long n, long k, const Rational& q);

// Drift parameters alpha_1, alpha_2, ... together with q.
// alpha is zero-extended past its stored length.
class Drift {
 public:
  Drift(Rational q, std::vector<int> alpha = {});

  const Rational& q() const { return q_; }
  const std::vector<int>& alpha() const { return alpha_; }
  bool trivial() const;

  int alpha_at(int k) const;
  // S(k) = alpha_1 + ... + alpha_k, S(k) = 0 for k <= 0
  long S(int k) const;
  // alpha_i + ... + alpha_j
  long alpha_sum(int i, int j) const { return S(j) - S(i - 1); }
  // beta_ij = alpha_i + ... + alpha_{i+j-1}, zero for j < 1
  long beta(int i, int j) const;

  Rational qp(long e) const;
  // z_{i,j} = prod_{k=i+1}^{j} z_k, extended by z_{i,j} = z_{i,m} z_{m,j}
  Rational z(int i, int j) const { return qp(S(j) - S(i)); }
  Rational zk(int k) const { return qp(alpha_at(k)); }

  // 1/(q^a;q)_d, continued to d < 0 by prod_{t=0}^{-d-1} (1 - q^{a+d+t}).
  Rational inv_poch(long a, long d) const;
  // (q^a;q)_d, only for d >= 0 or when inv_poch is nonzero
  Rational poch(long a, long d) const;
  Rational qfac(long n) const { return poch(1, n); }
  Rational binom(long n, long k) const;

 private:
  Rational q_;
  std::vector<int> alpha_;
  std::vector<long> prefix_;
  static constexpr long kCache = 160;
  std::vector<Rational> pow_;  // q^e for e in [-kCache, kCache]
};

}  // namespace qtoda
