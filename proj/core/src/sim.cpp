#include "qtoda/sim.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

namespace qtoda {

CellArray Trajectory::final_state() const {
  CellArray s = initial;
  for (const Event& e : events) s.add(e.cell, -1);
  return s;
}

CellArray Trajectory::state_at(double t) const {
  CellArray s = initial;
  for (const Event& e : events) {
    if (e.t > t) break;
    s.add(e.cell, -1);
  }
  return s;
}

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

size_t sample_index(const WeightedEnsemble& ens, Rng& rng) {
  if (ens.members.empty()) throw std::invalid_argument("empty ensemble");
  if (ens.members.size() == 1) return 0;
  mpz_class bits = rng();
  bits <<= 64;
  bits += mpz_class(static_cast<unsigned long>(rng()));
  mpz_class denom = 1;
  denom <<= 128;
  Rational threshold = Rational(bits, denom) * ens.normalizer;
  threshold.canonicalize();
  Rational cum = 0;
  for (size_t k = 0; k < ens.weights.size(); ++k) {
    cum += ens.weights[k];
    if (cum > threshold) return k;
  }
  return ens.weights.size() - 1;
}

CellArray sample_initial(const WeightedEnsemble& ens, uint64_t seed) {
  Rng rng(seed);
  return ens.members[sample_index(ens, rng)];
}

Trajectory simulate(const CellArray& initial, const RateVariant& variant, double horizon, Rng& rng) {
  Trajectory tr;
  tr.initial = initial;
  tr.horizon = horizon;
  CellArray state = initial;
  std::vector<Cell> cells = variant.cells();
  std::vector<double> rates(cells.size());
  double t = 0;
  while (true) {
    Rational total = 0;
    double total_d = 0;
    for (size_t k = 0; k < cells.size(); ++k) {
      Rational r = jump_rate(state, cells[k], variant);
      total += r;
      rates[k] = to_double(r);
      total_d += rates[k];
    }
    if (total == 0) break;
    t += -std::log1p(-uniform01(rng)) / total_d;
    if (t > horizon) break;
    double u = uniform01(rng) * total_d;
    size_t pick = cells.size();
    for (size_t k = 0; k < cells.size(); ++k) {
      if (rates[k] <= 0) continue;
      pick = k;
      if (u < rates[k]) break;
      u -= rates[k];
    }
    state.add(cells[pick], -1);
    assert(validate(state, variant.drift).ok);
    tr.events.push_back({t, cells[pick]});
  }
  return tr;
}

Trajectory simulate(const CellArray& initial, const RateVariant& variant, double horizon, uint64_t seed) {
  Rng rng(seed);
  Trajectory tr = simulate(initial, variant, horizon, rng);
  tr.seed = seed;
  return tr;
}

Trajectory project(const Trajectory& tr, const SkewShape& shape) {
  if (shape.mu().empty()) return tr;
  Trajectory out;
  out.initial = restrict_to(tr.initial, shape);
  out.seed = tr.seed;
  out.horizon = tr.horizon;
  for (const Event& e : tr.events)
    if (shape.in_skew(e.cell)) out.events.push_back(e);
  return out;
}

TheoryRate doob_theory(const Drift& drift) {
  auto table = std::make_shared<CoeffTable>(drift);
  return [table](const CellArray& sigma, Cell c) -> Rational {
    IntVec n = outer_diagonal(sigma);
    int r = static_cast<int>(n.size());
    if (c.i + c.j != r + 1) return 0;
    return doob_rates(n, *table)[c.i - 1];
  };
}

TheoryRate boundary_theory(const SkewShape& shape, const Drift& drift) {
  struct Cache {
    std::mutex mu;
    std::map<std::vector<int>, Rational> mass;
  };
  auto cache = std::make_shared<Cache>();
  auto mass = [cache, shape, drift](const CellArray& s) {
    std::lock_guard<std::mutex> lock(cache->mu);
    auto it = cache->mass.find(s.values());
    if (it != cache->mass.end()) return it->second;
    Rational a = fiber_mass(shape, s, drift);
    cache->mass.emplace(s.values(), a);
    return a;
  };
  RateVariant bd = RateVariant::boundary(shape, drift);
  return [mass, bd](const CellArray& sigma, Cell c) -> Rational {
    Rational b = jump_rate(sigma, c, bd);
    if (b == 0) return 0;
    CellArray next = sigma;
    next.add(c, -1);
    return b * mass(next) / mass(sigma);
  };
}

double RateAudit::max_abs_z() const {
  double m = 0;
  for (const AuditRow& r : rows)
    if (r.z) m = std::max(m, std::fabs(*r.z));
  return m;
}

size_t RateAudit::with_data() const {
  return static_cast<size_t>(std::count_if(rows.begin(), rows.end(), [](const AuditRow& r) { return r.z.has_value(); }));
}

RateAudit rate_audit(const std::vector<Trajectory>& runs, const SkewShape& shape, const TheoryRate& theory) {
  struct Agg {
    CellArray sigma;
    double time = 0;
    std::map<Cell, long> counts;
  };
  std::map<std::vector<int>, Agg> agg;
  auto slot = [&](const CellArray& s) -> Agg& {
    auto [it, fresh] = agg.try_emplace(s.values());
    if (fresh) it->second.sigma = s;
    return it->second;
  };
  for (const Trajectory& tr : runs) {
    CellArray s = tr.initial;
    double last = 0;
    for (const Event& e : tr.events) {
      Agg& a = slot(s);
      a.time += e.t - last;
      a.counts[e.cell] += 1;
      last = e.t;
      s.add(e.cell, -1);
    }
    Agg& a = slot(s);
    if (std::isfinite(tr.horizon)) a.time += tr.horizon - last;
  }
  RateAudit out;
  for (auto& [key, a] : agg) {
    for (Cell c : shape.skew_cells()) {
      AuditRow row;
      row.sigma = a.sigma;
      row.cell = c;
      auto it = a.counts.find(c);
      row.count = it == a.counts.end() ? 0 : it->second;
      row.time = a.time;
      row.rate = theory(a.sigma, c);
      double mean = to_double(row.rate) * row.time;
      if (mean > 0)
        row.z = (row.count - mean) / std::sqrt(mean);
      else if (row.count > 0)
        row.z = std::numeric_limits<double>::infinity();
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

ChiSquare conditional_law_test(const SkewShape& shape, const CellArray& sigma0, const Drift& drift,
                               const std::vector<double>& times, size_t replicas, uint64_t seed) {
  if (times.empty()) throw std::invalid_argument("no sampling times");
  WeightedEnsemble start = ensemble(shape, sigma0, drift);
  RateVariant full = RateVariant::full(shape, drift);
  std::map<std::vector<int>, std::map<std::vector<int>, long>> observed;
  std::map<std::vector<int>, CellArray> boundary_of;
  for (size_t i = 0; i < replicas; ++i) {
    Rng rng = replica_rng(seed, i);
    const CellArray& init = start.members[sample_index(start, rng)];
    Trajectory tr = simulate(init, full, times[i % times.size()], rng);
    CellArray st = tr.final_state();
    CellArray sigma = restrict_to(st, shape);
    boundary_of.try_emplace(sigma.values(), sigma);
    observed[sigma.values()][st.values()] += 1;
  }

  ChiSquare out;
  out.samples = replicas;
  for (auto& [key, counts] : observed) {
    WeightedEnsemble ens = ensemble(shape, boundary_of.at(key), drift);
    long n = 0;
    for (auto& [k, c] : counts) n += c;
    std::vector<std::pair<double, long>> bins;  // expected, observed
    long matched = 0;
    for (size_t k = 0; k < ens.members.size(); ++k) {
      auto it = counts.find(ens.members[k].values());
      long o = it == counts.end() ? 0 : it->second;
      matched += o;
      bins.push_back({to_double(ens.probability(k)) * n, o});
    }
    if (matched != n) {  // an observed state outside the fiber
      out.statistic = std::numeric_limits<double>::infinity();
      out.p_value = 0;
      return out;
    }
    std::sort(bins.begin(), bins.end());
    // merge small bins from the bottom until every bin expects at least 5
    std::vector<std::pair<double, long>> merged;
    std::pair<double, long> acc{0, 0};
    for (auto& b : bins) {
      acc.first += b.first;
      acc.second += b.second;
      if (acc.first >= 5) {
        merged.push_back(acc);
        acc = {0, 0};
      }
    }
    if (acc.first > 0 || acc.second > 0) {
      if (merged.empty()) {
        merged.push_back(acc);
      } else {
        merged.back().first += acc.first;
        merged.back().second += acc.second;
      }
    }
    if (merged.size() < 2) continue;
    ++out.groups;
    out.dof += static_cast<int>(merged.size()) - 1;
    for (auto& [e, o] : merged) out.statistic += (o - e) * (o - e) / e;
  }
  if (out.dof > 0) {
    boost::math::chi_squared dist(out.dof);
    out.p_value = boost::math::cdf(boost::math::complement(dist, out.statistic));
  }
  return out;
}

}  // namespace qtoda
