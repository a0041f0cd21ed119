#include "qtoda/qnum.hpp"

#include <cctype>
#include <stdexcept>

namespace qtoda {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-'))
      throw std::invalid_argument("malformed rational: " + s);
  }
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational: " + s);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& x) { return x.get_str(); }

double to_double(const Rational& x) { return x.get_d(); }

Rational qpow(const Rational& q, long e) {
  Rational r;
  if (e >= 0) {
    mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), static_cast<unsigned long>(e));
  } else {
    if (q == 0) throw std::domain_error("negative power of zero");
    mpz_pow_ui(r.get_num_mpz_t(), q.get_den_mpz_t(), static_cast<unsigned long>(-e));
    mpz_pow_ui(r.get_den_mpz_t(), q.get_num_mpz_t(), static_cast<unsigned long>(-e));
  }
  r.canonicalize();
  return r;
}

Rational q_pochhammer(const Rational& a, const Rational& q, long n) {
  Rational r = 1;
  Rational t = a;
  for (long k = 0; k < n; ++k) {
    r *= 1 - t;
    t *= q;
  }
  return r;
}

Rational q_binomial(long n, long k, const Rational& q) {
  if (k < 0 || k > n || n < 0) return 0;
  return q_pochhammer(q, q, n) / (q_pochhammer(q, q, k) * q_pochhammer(q, q, n - k));
}

Drift::Drift(Rational q, std::vector<int> alpha) : q_(std::move(q)), alpha_(std::move(alpha)) {
  if (q_ <= 0 || q_ >= 1) throw std::invalid_argument("q must lie in (0,1)");
  prefix_.assign(alpha_.size() + 1, 0);
  for (size_t k = 0; k < alpha_.size(); ++k) {
    if (alpha_[k] < 0) throw std::invalid_argument("alpha entries must be nonnegative");
    prefix_[k + 1] = prefix_[k] + alpha_[k];
  }
  pow_.resize(2 * kCache + 1);
  pow_[kCache] = 1;
  Rational inv = 1 / q_;
  for (long e = 1; e <= kCache; ++e) {
    pow_[kCache + e] = pow_[kCache + e - 1] * q_;
    pow_[kCache - e] = pow_[kCache - e + 1] * inv;
  }
}

bool Drift::trivial() const { return prefix_.back() == 0; }

int Drift::alpha_at(int k) const {
  if (k < 1 || k > static_cast<int>(alpha_.size())) return 0;
  return alpha_[k - 1];
}

long Drift::S(int k) const {
  if (k <= 0) return 0;
  if (k >= static_cast<int>(alpha_.size())) return prefix_.back();
  return prefix_[k];
}

long Drift::beta(int i, int j) const {
  if (j < 1) return 0;
  return S(i + j - 1) - S(i - 1);
}

Rational Drift::qp(long e) const {
  if (e >= -kCache && e <= kCache) return pow_[e + kCache];
  return qpow(q_, e);
}

Rational Drift::inv_poch(long a, long d) const {
  Rational r = 1;
  if (d >= 0) {
    for (long t = 0; t < d; ++t) {
      Rational f = 1 - qp(a + t);
      if (f == 0) throw std::domain_error("reciprocal Pochhammer with vanishing factor");
      r /= f;
    }
  } else {
    for (long t = 0; t < -d; ++t) r *= 1 - qp(a + d + t);
  }
  return r;
}

Rational Drift::poch(long a, long d) const {
  Rational r = 1;
  if (d >= 0) {
    for (long t = 0; t < d; ++t) r *= 1 - qp(a + t);
    return r;
  }
  Rational v = inv_poch(a, d);
  if (v == 0) throw std::domain_error("Pochhammer pole");
  return 1 / v;
}

Rational Drift::binom(long n, long k) const {
  if (k < 0 || k > n || n < 0) return 0;
  return qfac(n) / (qfac(k) * qfac(n - k));
}

}  // namespace qtoda
