// Named verification suites shared by `check` and the acceptance runner.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "qtoda/arrays.hpp"
#include "qtoda/qnum.hpp"
#include "qtoda/shapes.hpp"

namespace qtoda::cli {

struct CheckResult {
  std::string check;
  nlohmann::json instance;
  Rational discrepancy = 0;
  bool pass = true;
  nlohmann::json extra = nlohmann::json::object();

  nlohmann::json to_json() const;
};

struct SuiteOptions {
  int trials = 50;
  uint64_t seed = 0;
};

struct IntertwineInstance {
  Diagram lambda;
  Diagram mu;
  std::vector<int> alpha;
  Rational q;
  CellArray sigma;
};

// the fixed instance list: staircases, nonempty Vert, general mu, with and without drift
std::vector<IntertwineInstance> intertwine_instances();
// boundary array on lambda/mu with every boundary cell equal to v
CellArray constant_boundary(const SkewShape& shape, int v);

nlohmann::json rows_json(const CellArray& a);
nlohmann::json shape_json(const Diagram& lambda, const Diagram& mu, const std::vector<int>& alpha, const Rational& q);

std::vector<CheckResult> suite_toda();
std::vector<CheckResult> suite_oracles();
std::vector<CheckResult> suite_rank_step();
std::vector<CheckResult> suite_intertwine(const std::vector<IntertwineInstance>& instances);
std::vector<CheckResult> suite_hamiltonian(const std::vector<IntertwineInstance>& instances);
std::vector<CheckResult> suite_seq_lemma(const SuiteOptions& o);
std::vector<CheckResult> suite_lemma53(const SuiteOptions& o);
std::vector<CheckResult> suite_ok31(const SuiteOptions& o);
std::vector<CheckResult> suite_limits();

const std::vector<std::string>& suite_names();
// throws std::invalid_argument for an unknown name
std::vector<CheckResult> run_suite(const std::string& name, const SuiteOptions& o);

}  // namespace qtoda::cli
