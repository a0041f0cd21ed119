#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "qtoda/checks.hpp"
#include "qtoda/dynamics.hpp"
#include "qtoda/sim.hpp"
#include "qtoda/toda.hpp"
#include "suites.hpp"

namespace qtoda::cli {

using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  UsageError(const std::string& field, const std::string& what) : std::runtime_error("--" + field + ": " + what) {}
};

struct Options {
  std::string lambda, mu, alpha, q, n, sigma, suite, output, kind = "coeff", method = "both", horizon = "inf";
  int r = 0, trials = 50, from = 4, to = 10, coord = 1;
  uint64_t seed = 0;
  size_t replicas = 1;
  double threshold = 4;
};

std::vector<int> int_list(const std::string& field, const std::string& text) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError(field, "expected a comma list of integers, got '" + text + "'");
    }
  }
  return out;
}

Rational q_value(const Options& o) {
  if (o.q.empty()) throw UsageError("q", "required");
  Rational q;
  try {
    q = parse_rational(o.q);
  } catch (const std::exception& e) {
    throw UsageError("q", e.what());
  }
  if (q <= 0 || q >= 1) throw UsageError("q", "must lie in (0,1)");
  return q;
}

Drift drift_of(const Options& o) {
  std::vector<int> alpha = int_list("alpha", o.alpha);
  for (int a : alpha)
    if (a < 0) throw UsageError("alpha", "entries must be nonnegative");
  return Drift(q_value(o), alpha);
}

Diagram diagram(const std::string& field, const std::string& text) {
  try {
    return Diagram::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(field, e.what());
  }
}

double horizon_of(const Options& o) {
  if (o.horizon == "inf") return std::numeric_limits<double>::infinity();
  try {
    double h = std::stod(o.horizon);
    if (!(h > 0)) throw std::invalid_argument("");
    return h;
  } catch (const std::exception&) {
    throw UsageError("horizon", "expected a positive number or 'inf'");
  }
}

// the shape and starting values named by --n or by --lambda/--mu/--sigma
struct Instance {
  SkewShape shape;
  CellArray sigma;  // boundary array, or a full array when mu is empty
  bool staircase = false;
};

CellArray read_array(const std::string& path, const Diagram& lambda, const Diagram& mu) {
  std::ifstream in(path);
  if (!in) throw UsageError("sigma", "cannot open " + path);
  json rows;
  try {
    rows = json::parse(in);
  } catch (const std::exception& e) {
    throw UsageError("sigma", e.what());
  }
  if (rows.is_object() && rows.contains("rows")) rows = rows["rows"];
  if (!rows.is_array() || static_cast<int>(rows.size()) != lambda.length())
    throw UsageError("sigma", "expected one row per row of lambda");
  CellArray a(lambda, mu);
  for (int i = 1; i <= lambda.length(); ++i) {
    const json& row = rows[i - 1];
    if (!row.is_array() || static_cast<int>(row.size()) != lambda.part(i))
      throw UsageError("sigma", "row " + std::to_string(i) + " has the wrong length");
    for (int j = 1; j <= lambda.part(i); ++j) {
      if (!row[j - 1].is_number_integer()) throw UsageError("sigma", "entries must be integers");
      if (!mu.contains(i, j)) a.set({i, j}, row[j - 1].get<int>());
    }
  }
  return a;
}

Instance instance_of(const Options& o, const Drift& d) {
  if (!o.n.empty()) {
    std::vector<int> n = int_list("n", o.n);
    if (n.empty()) throw UsageError("n", "empty");
    for (int x : n)
      if (x < 0) throw UsageError("n", "entries must be nonnegative");
    int r = static_cast<int>(n.size());
    if (!o.lambda.empty() && !(diagram("lambda", o.lambda) == staircase(r + 1)))
      throw UsageError("lambda", "with --n the shape is the staircase of length r");
    Instance in{SkewShape(staircase(r + 1), staircase(r)), diagonal_boundary(n), true};
    if (!validate(in.sigma, d).ok) throw UsageError("n", "not a valid diagonal for this drift");
    return in;
  }
  if (o.lambda.empty()) throw UsageError("lambda", "give --n or --lambda with --sigma");
  Diagram lambda = diagram("lambda", o.lambda), mu = diagram("mu", o.mu);
  std::optional<SkewShape> shape;
  try {
    shape.emplace(lambda, mu);
  } catch (const std::exception& e) {
    throw UsageError("mu", e.what());
  }
  if (o.sigma.empty()) throw UsageError("sigma", "required with --lambda");
  CellArray sigma = read_array(o.sigma, lambda, mu);
  auto v = validate(sigma, d);
  if (!v.ok) {
    std::string where = v.first_bad ? " at (" + std::to_string(v.first_bad->i) + "," + std::to_string(v.first_bad->j) + ")" : "";
    throw UsageError("sigma", "array violates the drift constraints" + where);
  }
  bool stair = mu.length() >= 1 && lambda == staircase(mu.length() + 2) && mu == staircase(mu.length() + 1);
  return {*shape, sigma, stair};
}

json job_json(const std::string& command, const Options& o) {
  json j = {{"command", command}, {"seed", o.seed}};
  auto put = [&](const char* k, const std::string& v) {
    if (!v.empty()) j[k] = v;
  };
  put("lambda", o.lambda);
  put("mu", o.mu);
  put("alpha", o.alpha);
  put("q", o.q);
  put("n", o.n);
  put("output", o.output);
  if (!o.sigma.empty()) {
    j["sigma_path"] = o.sigma;
    std::ifstream in(o.sigma);
    if (in) j["sigma"] = json::parse(in, nullptr, false);
  }
  if (command == "coeff") {
    j["method"] = o.method;
    if (o.r) j["r"] = o.r;
  }
  if (command == "check") {
    j["suite"] = o.suite;
    j["trials"] = o.trials;
  }
  if (command == "simulate" || command == "audit") {
    j["horizon"] = o.horizon;
    j["replicas"] = o.replicas;
  }
  if (command == "audit") j["threshold"] = o.threshold;
  if (command == "limit") {
    j["kind"] = o.kind;
    j["from"] = o.from;
    j["to"] = o.to;
    if (o.kind == "doob") j["i"] = o.coord;
  }
  return j;
}

int cmd_coeff(const Options& o, json& doc) {
  Drift d = drift_of(o);
  std::vector<int> n = int_list("n", o.n);
  if (n.empty()) throw UsageError("n", "required");
  if (o.r != 0 && o.r != static_cast<int>(n.size())) throw UsageError("r", "does not match the length of --n");
  for (int x : n)
    if (x < 0) throw UsageError("n", "entries must be nonnegative");
  if (o.method != "direct" && o.method != "recursive" && o.method != "both")
    throw UsageError("method", "one of direct, recursive, both");
  std::optional<Rational> direct, rec;
  if (o.method != "recursive") direct = coeff_direct(n, d);
  if (o.method != "direct") rec = coeff_recursive(n, d);
  doc["value"] = to_string(direct ? *direct : *rec);
  if (direct) doc["direct"] = to_string(*direct);
  if (rec) doc["recursive"] = to_string(*rec);
  bool agree = !(direct && rec) || *direct == *rec;
  doc["pass"] = agree;
  return agree ? ok : failure;
}

int cmd_enumerate(const Options& o, json& doc) {
  Drift d = drift_of(o);
  Instance in = instance_of(o, d);
  WeightedEnsemble ens = ensemble(in.shape, in.sigma, d);
  json arrays = json::array();
  for (size_t k = 0; k < ens.members.size(); ++k)
    arrays.push_back({{"rows", rows_json(ens.members[k])}, {"probability", to_string(ens.probability(k))}});
  doc["count"] = ens.members.size();
  doc["normalizer"] = to_string(ens.normalizer);
  doc["arrays"] = arrays;
  return ok;
}

int cmd_check(const Options& o, json& doc) {
  if (o.suite.empty()) throw UsageError("suite", "required");
  if (o.trials < 1) throw UsageError("trials", "must be positive");
  std::vector<CheckResult> results;
  try {
    results = run_suite(o.suite, {o.trials, o.seed});
  } catch (const std::invalid_argument& e) {
    if (std::string(e.what()).rfind("unknown suite", 0) == 0) throw UsageError("suite", e.what());
    throw;
  }
  json arr = json::array();
  bool all = true;
  for (const CheckResult& c : results) {
    arr.push_back(c.to_json());
    all = all && c.pass;
  }
  doc["results"] = arr;
  doc["pass"] = all;
  return all ? ok : failure;
}

// initial state of replica k: a draw from the fiber of sigma, or sigma itself when mu is empty
struct Starter {
  const Instance& in;
  std::optional<WeightedEnsemble> ens;
  Starter(const Instance& in, const Drift& d) : in(in) {
    if (!in.shape.mu().empty()) ens = ensemble(in.shape, in.sigma, d);
  }
  CellArray draw(Rng& rng) const { return ens ? ens->members[sample_index(*ens, rng)] : in.sigma; }
};

int cmd_simulate(const Options& o, std::ostream& out, const json& job) {
  Drift d = drift_of(o);
  Instance in = instance_of(o, d);
  double horizon = horizon_of(o);
  if (o.replicas < 1) throw UsageError("replicas", "must be positive");
  Starter start(in, d);
  RateVariant var = RateVariant::full(in.shape, d);
  out << json{{"job", job}, {"variant", var.name()}, {"rng", "mt19937_64, replica i seeded with seed xor i"}}.dump() << "\n";
  for (size_t k = 0; k < o.replicas; ++k) {
    Rng rng = replica_rng(o.seed, k);
    CellArray init = start.draw(rng);
    Trajectory tr = simulate(init, var, horizon, rng);
    out << json{{"replica", k}, {"initial", rows_json(init)}}.dump() << "\n";
    for (const Event& e : tr.events) out << json{{"replica", k}, {"t", e.t}, {"cell", {e.cell.i, e.cell.j}}}.dump() << "\n";
  }
  return ok;
}

int cmd_audit(const Options& o, json& doc) {
  Drift d = drift_of(o);
  Instance in = instance_of(o, d);
  if (in.shape.mu().empty()) throw UsageError("mu", "audit needs a nonempty mu");
  double horizon = horizon_of(o);
  if (o.replicas < 1) throw UsageError("replicas", "must be positive");
  Starter start(in, d);
  RateVariant var = RateVariant::full(in.shape, d);
  std::vector<Trajectory> runs;
  for (size_t k = 0; k < o.replicas; ++k) {
    Rng rng = replica_rng(o.seed, k);
    runs.push_back(project(simulate(start.draw(rng), var, horizon, rng), in.shape));
  }
  TheoryRate theory = in.staircase ? doob_theory(d) : boundary_theory(in.shape, d);
  RateAudit audit = rate_audit(runs, in.shape, theory);
  json rows = json::array();
  for (const AuditRow& r : audit.rows) {
    rows.push_back({{"sigma", rows_json(r.sigma)},
                    {"cell", {r.cell.i, r.cell.j}},
                    {"count", r.count},
                    {"time", r.time},
                    {"rate", to_string(r.rate)},
                    {"z", r.z ? json(*r.z) : json(nullptr)}});
  }
  doc["theory"] = in.staircase ? "doob" : "boundary";
  doc["rows"] = rows;
  doc["max_abs_z"] = audit.max_abs_z();
  bool pass = audit.max_abs_z() <= o.threshold;
  doc["pass"] = pass;
  return pass ? ok : failure;
}

int cmd_limit(const Options& o, json& doc) {
  if (o.from > o.to || o.from < 1) throw UsageError("from", "need 1 <= from <= to");
  std::vector<LimitPoint> pts;
  if (o.kind == "coeff" || o.kind == "doob") {
    std::vector<int> n = int_list("n", o.n);
    if (n.empty()) throw UsageError("n", "required");
    if (o.kind == "coeff") {
      pts = limit_coeff(n, o.from, o.to);
    } else {
      if (o.coord < 1 || o.coord > static_cast<int>(n.size())) throw UsageError("i", "coordinate out of range");
      pts = limit_doob(n, o.coord, o.from, o.to);
    }
  } else if (o.kind == "potential") {
    Options oq = o;
    oq.q = "1/2";  // only used for validation of sigma
    Drift d = drift_of(oq);
    Instance in = instance_of(oq, d);
    pts = limit_potential(in.shape, in.sigma, d.alpha(), o.from, o.to);
  } else {
    throw UsageError("kind", "one of coeff, doob, potential");
  }
  json arr = json::array();
  for (const LimitPoint& p : pts)
    arr.push_back({{"j", p.j}, {"q", p.q}, {"scaled", p.scaled}, {"target", p.target}, {"gap", p.gap}});
  doc["points"] = arr;
  return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"q-Whittaker coefficients, array dynamics and their checks", "qtoda"};
  app.require_subcommand(1);
  Options o;

  auto shape_opts = [&](CLI::App* c) {
    c->add_option("--lambda", o.lambda, "outer diagram, comma list");
    c->add_option("--mu", o.mu, "inner diagram, comma list");
    c->add_option("--n", o.n, "outer diagonal, comma list");
    c->add_option("--sigma", o.sigma, "JSON file with the array rows");
  };
  auto drift_opts = [&](CLI::App* c) {
    c->add_option("--q", o.q, "q as p/d");
    c->add_option("--alpha", o.alpha, "drifts, comma list");
  };
  auto common = [&](CLI::App* c) {
    c->add_option("--seed", o.seed, "seed");
    c->add_option("--output", o.output, "output path (default stdout)");
  };

  CLI::App* coeff = app.add_subcommand("coeff", "Whittaker coefficient a_r(n)");
  drift_opts(coeff);
  common(coeff);
  coeff->add_option("--n", o.n, "diagonal, comma list");
  coeff->add_option("--r", o.r, "rank (optional, must match --n)");
  coeff->add_option("--method", o.method, "direct, recursive or both");

  CLI::App* en = app.add_subcommand("enumerate", "arrays of a fiber with their probabilities");
  shape_opts(en);
  drift_opts(en);
  common(en);

  CLI::App* check = app.add_subcommand("check", "run a verification suite");
  common(check);
  check->add_option("--suite", o.suite, "suite name");
  check->add_option("--trials", o.trials, "randomized trials");

  CLI::App* sim = app.add_subcommand("simulate", "simulate the full dynamics (JSONL)");
  shape_opts(sim);
  drift_opts(sim);
  common(sim);
  sim->add_option("--horizon", o.horizon, "time horizon or 'inf'");
  sim->add_option("--replicas", o.replicas, "replicas");

  CLI::App* audit = app.add_subcommand("audit", "compare boundary jump counts with exact rates");
  shape_opts(audit);
  drift_opts(audit);
  common(audit);
  audit->add_option("--horizon", o.horizon, "time horizon or 'inf'");
  audit->add_option("--replicas", o.replicas, "replicas");
  audit->add_option("--threshold", o.threshold, "largest allowed |z|");

  CLI::App* limit = app.add_subcommand("limit", "q -> 1 probes at q = 1 - 2^-j");
  shape_opts(limit);
  common(limit);
  limit->add_option("--alpha", o.alpha, "drifts, comma list");
  limit->add_option("--kind", o.kind, "coeff, doob or potential");
  limit->add_option("--from", o.from, "first j");
  limit->add_option("--to", o.to, "last j");
  limit->add_option("--i", o.coord, "coordinate for --kind doob");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return usage;
  }

  std::string command = app.get_subcommands().front()->get_name();
  std::ofstream file;
  std::ostream* sink = &out;
  if (!o.output.empty()) {
    file.open(o.output);
    if (!file) {
      err << "usage error: --output: cannot open " << o.output << "\n";
      return usage;
    }
    sink = &file;
  }
  try {
    json job = job_json(command, o);
    if (command == "simulate") return cmd_simulate(o, *sink, job);
    json doc = {{"job", job}, {"metadata", {{"tool", "qtoda"}, {"version", "0.1.0"}}}};
    int code = ok;
    if (command == "coeff") code = cmd_coeff(o, doc);
    if (command == "enumerate") code = cmd_enumerate(o, doc);
    if (command == "check") code = cmd_check(o, doc);
    if (command == "audit") code = cmd_audit(o, doc);
    if (command == "limit") code = cmd_limit(o, doc);
    *sink << doc.dump(2) << "\n";
    return code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  }
}

}  // namespace qtoda::cli
