// Continuous-time simulation of the array dynamics and statistical audits.
#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "qtoda/arrays.hpp"
#include "qtoda/dynamics.hpp"
#include "qtoda/toda.hpp"

namespace qtoda {

using Rng = std::mt19937_64;

// replica i draws from Rng(seed ^ i)
inline Rng replica_rng(uint64_t seed, uint64_t replica) { return Rng(seed ^ replica); }

struct Event {
  double t = 0;
  Cell cell;
};

struct Trajectory {
  CellArray initial;
  std::vector<Event> events;
  uint64_t seed = 0;
  double horizon = std::numeric_limits<double>::infinity();

  CellArray final_state() const;
  // state just after all events with time <= t
  CellArray state_at(double t) const;
};

// exact categorical draw: cumulative weights against a 128-bit uniform
size_t sample_index(const WeightedEnsemble& ens, Rng& rng);
CellArray sample_initial(const WeightedEnsemble& ens, uint64_t seed);

// uniform double in [0,1) with 53 random bits
double uniform01(Rng& rng);

// runs until `horizon` or absorption (total rate exactly 0)
Trajectory simulate(const CellArray& initial, const RateVariant& variant, double horizon, Rng& rng);
Trajectory simulate(const CellArray& initial, const RateVariant& variant, double horizon, uint64_t seed);

// keep the events on lambda/mu; the initial state becomes the boundary array
Trajectory project(const Trajectory& tr, const SkewShape& shape);

// theoretical jump rate of boundary cell c out of sigma
using TheoryRate = std::function<Rational(const CellArray& sigma, Cell c)>;
// staircase delta_{r+1}/delta_r: Doob rates of the coefficients on the outer diagonal
TheoryRate doob_theory(const Drift& drift);
// general skew shape: rates of A^{-1} H A
TheoryRate boundary_theory(const SkewShape& shape, const Drift& drift);

struct AuditRow {
  CellArray sigma;
  Cell cell;
  long count = 0;
  double time = 0;
  Rational rate = 0;
  std::optional<double> z;  // empty when no data
};

struct RateAudit {
  std::vector<AuditRow> rows;
  double max_abs_z() const;
  size_t with_data() const;
};

// `runs` must already be projected onto the boundary
RateAudit rate_audit(const std::vector<Trajectory>& runs, const SkewShape& shape, const TheoryRate& theory);

struct ChiSquare {
  double statistic = 0;
  int dof = 0;
  double p_value = 1;
  size_t samples = 0;
  size_t groups = 0;
};

// Start from K_sigma0, run the full dynamics, and record one sample per replica at
// times[i % times.size()]. Tests the mu-values given the boundary value against K_sigma(t).
ChiSquare conditional_law_test(const SkewShape& shape, const CellArray& sigma0, const Drift& drift,
                               const std::vector<double>& times, size_t replicas, uint64_t seed);

}  // namespace qtoda
