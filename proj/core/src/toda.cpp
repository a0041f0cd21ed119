#include "qtoda/toda.hpp"

#include <cmath>
#include <stdexcept>

#include "qtoda/dynamics.hpp"

namespace qtoda {

namespace {

bool any_negative(const IntVec& n) {
  for (int x : n)
    if (x < 0) return true;
  return false;
}

// advance a multi-index over the box [0, hi_i]; false when exhausted
bool next_index(IntVec& k, const IntVec& hi) {
  for (size_t t = 0; t < k.size(); ++t) {
    if (k[t] < hi[t]) {
      ++k[t];
      return true;
    }
    k[t] = 0;
  }
  return false;
}

Rational factorial(long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(f);
}

}  // namespace

Rational coeff_direct(const IntVec& n, const Drift& drift) {
  if (any_negative(n)) return 0;
  int r = static_cast<int>(n.size());
  Rational total = 0;
  for (const CellArray& pi : enumerate_fiber(n, drift)) {
    long e = 0;
    Rational t = 1;
    for (Cell c : pi.lambda().cells()) {
      int v = pi.at(c);
      if (c.i + c.j <= r) e += static_cast<long>(v) * (v - pi.at(c.i + 1, c.j - 1)) + static_cast<long>(drift.alpha_at(c.i)) * v;
      t *= drift.inv_poch(1, v - pi.at(c.i, c.j - 1));
      t *= drift.inv_poch(1 + drift.beta(c.i, c.j), v - pi.at(c.i - 1, c.j));
      if (t == 0) break;
    }
    total += drift.qp(e) * t;
  }
  return total;
}

Rational kernel(const IntVec& n, const IntVec& k, const Drift& drift) {
  int r = static_cast<int>(n.size());
  auto kk = [&](int i) { return (i >= 1 && i <= r - 1) ? k[i - 1] : 0; };
  Rational t = 1;
  for (int i = 1; i <= r && t != 0; ++i) {
    t *= drift.inv_poch(1, n[i - 1] - kk(i));
    t *= drift.inv_poch(1 + drift.S(r) - drift.S(i - 1), n[i - 1] - kk(i - 1));
  }
  return t;
}

Rational kernel_weight(const IntVec& k, const Drift& drift) {
  long e = 0;
  int m = static_cast<int>(k.size());
  for (int i = 0; i < m; ++i) {
    int next = i + 1 < m ? k[i + 1] : 0;
    e += static_cast<long>(k[i]) * (k[i] - next) + static_cast<long>(drift.alpha_at(i + 1)) * k[i];
  }
  return drift.qp(e);
}

Rational CoeffTable::get(const IntVec& n) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = memo_.find(n);
  if (it != memo_.end()) return it->second;
  Rational v = compute(n);
  memo_.emplace(n, v);
  return v;
}

Rational CoeffTable::compute(const IntVec& n) {
  int r = static_cast<int>(n.size());
  if (r == 0) return 1;
  if (any_negative(n)) return 0;
  IntVec hi(r - 1);
  for (int i = 1; i <= r - 1; ++i) {
    long b = std::min<long>(n[i - 1], n[i] + drift_.S(r) - drift_.S(i));
    if (b < 0) return 0;
    hi[i - 1] = static_cast<int>(b);
  }
  Rational total = 0;
  IntVec k(r - 1, 0);
  do {
    Rational kv = kernel(n, k, drift_);
    if (kv != 0) total += kernel_weight(k, drift_) * kv * get(k);
  } while (next_index(k, hi));
  return total;
}

Rational coeff_recursive(const IntVec& n, const Drift& drift) {
  CoeffTable table(drift);
  return table.get(n);
}

Rational apply_h(const IntVec& n, const Drift& drift, const GridFn& f) {
  int r = static_cast<int>(n.size());
  auto nn = [&](int i) { return (i >= 1 && i <= r) ? n[i - 1] : 0; };
  Rational total = 0;
  Rational fn = f(n);
  for (int i = 0; i <= r; ++i) {
    Rational p = drift.qp(nn(i + 1) - nn(i));
    Rational zr = drift.z(i, r);
    if (i >= 1 && n[i - 1] > 0) {
      IntVec m = n;
      --m[i - 1];
      total += p * zr * f(m);
    }
    total += (1 - p) * zr * fn;
  }
  return total;
}

Rational apply_h_adjoint(const IntVec& k, const Drift& drift, const GridFn& g) {
  int r = static_cast<int>(k.size());
  auto kk = [&](int i) { return (i >= 1 && i <= r) ? k[i - 1] : 0; };
  Rational total = 0;
  Rational gk = g(k);
  for (int i = 0; i <= r; ++i) {
    if (i >= 1) {
      IntVec m = k;
      ++m[i - 1];
      total += drift.qp(kk(i) - kk(i - 1)) * drift.z(i - 1, r) * g(m);
    }
    total += (1 - drift.qp(kk(i + 1) - kk(i))) * drift.z(i, r) * gk;
  }
  return total;
}

Rational apply_q(const IntVec& n, const Drift& drift, const GridFn& f) {
  int r = static_cast<int>(n.size());
  if (any_negative(n)) return 0;
  IntVec hi(n.begin(), n.end() - 1);
  IntVec k(r - 1, 0);
  Rational total = 0;
  do {
    Rational kv = kernel(n, k, drift);
    if (kv != 0) total += kernel_weight(k, drift) * kv * f(k);
  } while (next_index(k, hi));
  return total;
}

Rational toda_residual(const IntVec& n, CoeffTable& table) {
  return apply_h(n, table.drift(), [&](const IntVec& m) { return table.get(m); });
}

Rational toda_residual(const IntVec& n, const Drift& drift) {
  CoeffTable table(drift);
  return toda_residual(n, table);
}

std::vector<Rational> doob_rates(const IntVec& n, CoeffTable& table) {
  const Drift& d = table.drift();
  int r = static_cast<int>(n.size());
  Rational a = table.get(n);
  if (a == 0) throw std::domain_error("coefficient vanishes");
  std::vector<Rational> out(r, Rational(0));
  for (int i = 1; i <= r; ++i) {
    if (n[i - 1] == 0) continue;
    IntVec m = n;
    --m[i - 1];
    int next = i < r ? n[i] : 0;
    out[i - 1] = d.qp(next - n[i - 1]) * d.z(i, r) * table.get(m) / a;
  }
  return out;
}

Rational skew_weight(const CellArray& pi, const SkewShape& shape, const Drift& drift) {
  if (!validate(pi, drift).ok || !(pi.lambda() == shape.lambda()) || pi.is_boundary())
    throw std::invalid_argument("weight of an invalid array");
  long e = 0;
  Rational w = 1;
  for (Cell c : shape.mu().cells()) {
    int i = c.i, j = c.j;
    long v = pi.at(c);
    long left = pi.at(i, j - 1), up = pi.at(i - 1, j);
    e += v * v + static_cast<long>(drift.alpha_at(i)) * v;
    Cell dl{i + 1, j - 1};
    if (shape.lambda().contains(dl)) e -= v * pi.at(dl);  // dl in mu or in lambda/mu
    w *= drift.binom(v, left) * drift.qfac(v) / drift.qfac(up) * drift.inv_poch(1 + drift.beta(i, j), v - up);
    if (shape.in_skew({i, j + 1})) w *= drift.binom(pi.at(i, j + 1), v);
    if (shape.in_skew({i + 1, j})) {
      long a = 1 + drift.S(i + j) - drift.S(i);
      long below = pi.at(i + 1, j);
      w *= drift.poch(a, below) / drift.qfac(v) * drift.inv_poch(a, below - v);
    }
  }
  for (Cell c : shape.skew_cells()) {
    Cell dl{c.i + 1, c.j - 1};
    if (shape.in_mu(dl)) e -= static_cast<long>(pi.at(c)) * pi.at(dl);
  }
  return drift.qp(e) * w;
}

Rational staircase_binomial_weight(const CellArray& pi, const Drift& drift) {
  int r = pi.lambda().length();
  long e = 0;
  Rational w = 1;
  for (Cell c : pi.lambda().cells()) {
    if (c.i + c.j > r) continue;
    long v = pi.at(c);
    e += v * (v - pi.at(c.i + 1, c.j - 1));
    w *= drift.binom(pi.at(c.i + 1, c.j), v) * drift.binom(pi.at(c.i, c.j + 1), v);
  }
  return drift.qp(e) * w;
}

Rational staircase_pochhammer_weight(const CellArray& pi, const Drift& drift) {
  int r = pi.lambda().length();
  long e = 0;
  Rational w = 1;
  for (Cell c : pi.lambda().cells()) {
    long v = pi.at(c);
    if (c.i + c.j <= r) e += v * (v - pi.at(c.i + 1, c.j - 1)) + static_cast<long>(drift.alpha_at(c.i)) * v;
    w *= drift.inv_poch(1, v - pi.at(c.i, c.j - 1));
    w *= drift.inv_poch(1 + drift.beta(c.i, c.j), v - pi.at(c.i - 1, c.j));
  }
  return drift.qp(e) * w;
}

WeightedEnsemble ensemble(const SkewShape& shape, const CellArray& sigma, const Drift& drift, WeightForm form) {
  if (form != WeightForm::skew) {
    int r = shape.lambda().length();
    if (!(shape.lambda() == staircase(r + 1)) || !(shape.mu() == staircase(r)))
      throw std::invalid_argument("staircase weight forms need lambda = delta_{r+1}, mu = delta_r");
  }
  WeightedEnsemble out;
  out.members = enumerate_fiber(shape, sigma, drift);
  if (out.members.empty()) throw std::invalid_argument("empty fiber");
  for (const CellArray& pi : out.members) {
    Rational w;
    switch (form) {
      case WeightForm::skew: w = skew_weight(pi, shape, drift); break;
      case WeightForm::staircase_binomial: w = staircase_binomial_weight(pi, drift); break;
      case WeightForm::staircase_pochhammer: w = staircase_pochhammer_weight(pi, drift); break;
    }
    out.normalizer += w;
    out.weights.push_back(std::move(w));
  }
  return out;
}

std::map<IntVec, Rational> series_residual(int r, int cap, const Drift& drift) {
  if (r < 1 || cap < 1) throw std::invalid_argument("series_residual needs r >= 1 and cap >= 1");
  CoeffTable table(drift);
  std::map<IntVec, Rational> phi;
  IntVec hi(r, cap), n(r, 0);
  do {
    phi[n] = table.get(n);
  } while (next_index(n, hi));

  std::map<IntVec, Rational> out;
  auto exp_at = [&](const IntVec& m, int i) { return (i >= 1 && i <= r) ? m[i - 1] : 0; };
  for (int i = 0; i <= r; ++i) {
    Rational zr = drift.z(i, r);
    // z (1 - y_i) phi
    std::map<IntVec, Rational> prod;
    for (const auto& [m, c] : phi) {
      prod[m] += zr * c;
      if (i >= 1) {
        IntVec m2 = m;
        ++m2[i - 1];
        prod[m2] -= zr * c;
      }
    }
    // D_{i+1} D_i^{-1} multiplies y^m by q^{m_{i+1} - m_i}
    for (const auto& [m, c] : prod) out[m] += drift.qp(exp_at(m, i + 1) - exp_at(m, i)) * c;
    for (const auto& [m, c] : phi) out[m] -= zr * c;
  }
  std::map<IntVec, Rational> interior;
  for (const auto& [m, c] : out) {
    bool inside = true;
    for (int x : m) inside = inside && x <= cap - 1;
    if (inside) interior.emplace(m, c);
  }
  return interior;
}

Rational classical_coeff(const IntVec& n) {
  if (any_negative(n)) return 0;
  Drift d(Rational(1, 2));
  Rational total = 0;
  for (const CellArray& pi : enumerate_fiber(n, d)) {
    Rational t = 1;
    for (Cell c : pi.lambda().cells()) {
      int v = pi.at(c);
      t /= factorial(v - pi.at(c.i - 1, c.j)) * factorial(v - pi.at(c.i, c.j - 1));
    }
    total += t;
  }
  return total;
}

namespace {
Rational q_of(int j) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(j));
  return 1 - Rational(1) / Rational(p);
}
}  // namespace

std::vector<LimitPoint> limit_coeff(const IntVec& n, int j_from, int j_to) {
  Rational target = classical_coeff(n);
  long total = 0;
  for (int x : n) total += x;
  std::vector<LimitPoint> out;
  for (int j = j_from; j <= j_to; ++j) {
    Rational q = q_of(j);
    Drift d(q);
    Rational scaled = qpow(1 - q, 2 * total) * coeff_recursive(n, d);
    out.push_back({j, to_double(q), to_double(scaled), to_double(target), to_double(abs(scaled - target))});
  }
  return out;
}

std::vector<LimitPoint> limit_doob(const IntVec& n, int i, int j_from, int j_to) {
  Rational target = 0;
  if (n[i - 1] > 0) {
    IntVec m = n;
    --m[i - 1];
    target = classical_coeff(m) / classical_coeff(n);
  }
  std::vector<LimitPoint> out;
  for (int j = j_from; j <= j_to; ++j) {
    Rational q = q_of(j);
    CoeffTable table{Drift(q)};
    Rational scaled = doob_rates(n, table)[i - 1] / ((1 - q) * (1 - q));
    out.push_back({j, to_double(q), to_double(scaled), to_double(target), to_double(abs(scaled - target))});
  }
  return out;
}

double classical_potential(const SkewShape& shape, const CellArray& sigma, const Drift& drift) {
  long total = 0;
  for (Cell c : special_sets(shape).corners) total += static_cast<long>(sigma.at(c.i + 1, c.j)) * sigma.at(c.i, c.j + 1);
  for (int i = 1; i <= shape.mu().length(); ++i) {
    int m = shape.mu().part(i);
    total += drift.beta(i + 1, m) * sigma.at(i, m + 1);
  }
  return static_cast<double>(total);
}

std::vector<LimitPoint> limit_potential(const SkewShape& shape, const CellArray& sigma, const std::vector<int>& alpha,
                                        int j_from, int j_to) {
  std::vector<LimitPoint> out;
  for (int j = j_from; j <= j_to; ++j) {
    Rational q = q_of(j);
    Drift d(q, alpha);
    Rational scaled = potential(sigma, shape, d) / ((1 - q) * (1 - q));
    double target = classical_potential(shape, sigma, d);
    double s = to_double(scaled);
    out.push_back({j, to_double(q), s, target, std::fabs(s - target)});
  }
  return out;
}

}  // namespace qtoda
