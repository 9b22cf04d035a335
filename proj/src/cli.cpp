#include "tclust/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "tclust/error.hpp"
#include "tclust/flow.hpp"
#include "tclust/generators.hpp"
#include "tclust/io.hpp"
#include "tclust/kcenter.hpp"
#include "tclust/level_graph.hpp"
#include "tclust/median.hpp"
#include "tclust/oracle.hpp"

namespace tclust {

namespace {

using nlohmann::json;

struct Options {
  std::string input = "-";
  std::string output;
  std::optional<double> tolerance;

  // solve / eval / oracle
  std::string algo;
  std::size_t k = 1;
  double r = 0.0;
  double delta = 0.0;
  double epsilon = 0.1;
  std::string objective = "center";
  std::string batch;
  unsigned threads = 0;
  std::string dump_graph;
  std::string dump_network;
  std::string clustering;
  bool check = false;
  std::string method = "subsets";
  OracleBudget budget;

  // generate
  GadgetParams gadget;
  bool example = false;
  WalkerParams walkers;
};

// Thrown for bad flag combinations; reported like parse errors (exit 1).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path, std::istream& in) {
  if (path.empty() || path == "-") {
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  return read_file(path);
}

void emit(const Options& opt, std::ostream& out, const std::string& text) {
  if (opt.output.empty() || opt.output == "-") {
    out << text;
  } else {
    write_file(opt.output, text);
  }
}

double resolve_tolerance(const Options& opt) {
  if (opt.tolerance) return *opt.tolerance;
  if (const char* env = std::getenv("TEMPORAL_CLUSTER_TOLERANCE")) {
    char* end = nullptr;
    const double value = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(value >= 0.0) || !std::isfinite(value)) {
      throw UsageError(std::string("TEMPORAL_CLUSTER_TOLERANCE must be a nonnegative number, got '") +
                       env + "'");
    }
    return value;
  }
  return 0.0;
}

TemporalSampling load(const std::string& text, const Options& opt) {
  LoadOptions lo;
  lo.tolerance = resolve_tolerance(opt);
  return load_instance(text, lo);
}

// ---- solve -----------------------------------------------------------------

struct SolveResult {
  json doc;
  bool feasible = false;
};

json guarantee(std::size_t k, double r, double delta, Objective objective) {
  return {{"k", k}, {"r", r}, {"delta", delta}, {"objective", to_string(objective)}};
}

SolveResult solve_instance(const TemporalSampling& p, const Options& opt) {
  const Objective center = Objective::center;
  json doc{{"algorithm", opt.algo},
           {"params", {{"k", opt.k}, {"r", opt.r}, {"delta", opt.delta}}}};
  std::optional<SolveOutcome> outcome;
  if (opt.algo == "exact-k") {
    outcome = solve_exact_k(p, opt.k, opt.r, opt.delta);
    doc["guarantee"] = guarantee(opt.k, 2.0 * opt.r, 2.0 * opt.r + opt.delta, center);
  } else if (opt.algo == "bicriteria") {
    outcome = solve_bicriteria(p, opt.k, opt.r, opt.delta);
    doc["guarantee"] = guarantee(2 * opt.k, 2.0 * opt.r, opt.r + opt.delta, center);
  } else if (opt.algo == "rds-greedy") {
    doc["params"].erase("k");
    outcome = solve_rds_greedy(p, opt.r, opt.delta);
    if (outcome->feasible()) {
      doc["guarantee"] = guarantee(outcome->clustering().size(), opt.r, opt.delta, center);
    }
  } else {
    MedianParams mp{opt.k, opt.r, opt.delta, opt.epsilon,
                    opt.algo == "means-greedy" ? Objective::means : Objective::median};
    doc["params"]["epsilon"] = opt.epsilon;
    const MedianRun run = median_greedy(p, mp);
    outcome = run.outcome;
    doc["potentials"] = run.potentials;
    doc["iteration_limit"] = run.iteration_limit;
    doc["used_flow"] = run.used_flow;
    doc["guarantee"] = run.used_flow
                           ? guarantee(opt.k, opt.r, opt.delta, mp.objective)
                           : guarantee(1 + run.iteration_limit, (1.0 + opt.epsilon) * opt.r,
                                       opt.delta, mp.objective);
  }
  if (outcome->feasible()) {
    doc["status"] = "feasible";
    doc["trajectories"] = clustering_to_json(outcome->clustering())["trajectories"];
    doc["stats"] = stats_to_json(compute_stats(p, outcome->clustering()));
    return {doc, true};
  }
  doc["status"] = "infeasible";
  doc["certificate"] = outcome->certificate().to_json();
  return {doc, false};
}

void check_solve_flags(const Options& opt, const CLI::App& solve) {
  if (solve.count("--batch") == 0) {
    if (solve.count("--r") == 0) throw UsageError("solve: --r is required");
    if (solve.count("--delta") == 0) throw UsageError("solve: --delta is required");
  }
  if (opt.algo != "rds-greedy" && solve.count("--k") == 0) {
    throw UsageError("solve: --k is required for " + opt.algo);
  }
  if (opt.algo != "rds-greedy" && opt.k == 0) throw UsageError("solve: --k must be >= 1");
  if ((opt.algo == "median-greedy" || opt.algo == "means-greedy") && !(opt.epsilon > 0.0)) {
    throw UsageError("solve: --epsilon must be > 0");
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

std::string batch_row(const std::filesystem::path& file, const Options& opt) {
  const std::string name = file.filename().string();
  try {
    const auto p = load(read_file(file.string()), opt);
    const auto result = solve_instance(p, opt);
    std::ostringstream row;
    row << csv_field(name) << ',' << result.doc["status"].get<std::string>();
    if (result.feasible) {
      const auto& s = result.doc["stats"];
      row << ',' << s["k"].dump() << ',' << s["rad_inf"].dump() << ',' << s["rad_1"].dump()
          << ',' << s["rad_2"].dump() << ',' << s["delta"].dump() << ",";
    } else {
      row << ",,,,,," << csv_field(result.doc["certificate"]["message"].get<std::string>());
    }
    return row.str();
  } catch (const std::exception& e) {
    return csv_field(name) + ",error,,,,,," + csv_field(e.what());
  }
}

int run_batch(const Options& opt, std::ostream& out) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(opt.batch)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<std::string> rows(files.size());
  unsigned workers = opt.threads != 0 ? opt.threads : std::max(1U, std::thread::hardware_concurrency());
  workers = std::max<unsigned>(1, std::min<unsigned>(workers, static_cast<unsigned>(files.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t j = next++; j < files.size(); j = next++) rows[j] = batch_row(files[j], opt);
  };
  std::vector<std::jthread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  pool.clear();

  std::string csv = "name,status,k,rad_inf,rad_1,rad_2,delta,detail\n";
  bool errors = false;
  for (const auto& row : rows) {
    csv += row + "\n";
    errors = errors || row.find(",error,") != std::string::npos;
  }
  emit(opt, out, csv);
  return errors ? kExitFailure : kExitOk;
}

int run_solve(const Options& opt, const CLI::App& solve, std::istream& in, std::ostream& out) {
  check_solve_flags(opt, solve);
  if (!opt.batch.empty()) return run_batch(opt, out);
  const auto p = load(read_input(opt.input, in), opt);
  if (!opt.dump_graph.empty()) {
    write_file(opt.dump_graph, LevelGraph(p, opt.delta).to_json().dump(2) + "\n");
  }
  if (!opt.dump_network.empty()) {
    if (opt.algo != "exact-k" && opt.algo != "bicriteria") {
      throw UsageError("solve: --dump-network applies to exact-k and bicriteria");
    }
    const double gamma = opt.algo == "exact-k" ? 2.0 * opt.r + opt.delta : opt.r + opt.delta;
    const auto net = build_network(p, level_nets(p, 2.0 * opt.r), gamma);
    write_file(opt.dump_network, net.to_json().dump(2) + "\n");
  }
  const auto result = solve_instance(p, opt);
  emit(opt, out, result.doc.dump(2) + "\n");
  return result.feasible ? kExitOk : kExitInfeasible;
}

// ---- eval ------------------------------------------------------------------

int run_eval(const Options& opt, const CLI::App& eval, std::istream& in, std::ostream& out) {
  if (opt.clustering.empty()) throw UsageError("eval: --clustering is required");
  if (opt.check) {
    for (const char* flag : {"--k", "--r", "--delta"}) {
      if (eval.count(flag) == 0) throw UsageError(std::string("eval --check: ") + flag + " is required");
    }
  }
  if (opt.input == "-" && opt.clustering == "-") {
    throw UsageError("eval: instance and clustering cannot both come from stdin");
  }
  const auto p = load(read_input(opt.input, in), opt);
  const auto c = load_clustering(read_input(opt.clustering, in));
  json doc{{"stats", stats_to_json(compute_stats(p, c))}};
  int code = kExitOk;
  if (opt.check) {
    const auto report = check_solution(p, c, opt.k, opt.r, opt.delta, objective_from_string(opt.objective));
    json violations = json::array();
    for (const auto& v : report.violations) {
      const char* bound = v.bound == Bound::count ? "count"
                          : v.bound == Bound::radius ? "radius"
                                                     : "displacement";
      violations.push_back({{"bound", bound}, {"actual", v.actual}, {"limit", v.limit}});
    }
    doc["check"] = {{"pass", report.pass},
                    {"k", opt.k},
                    {"r", opt.r},
                    {"delta", opt.delta},
                    {"objective", opt.objective},
                    {"violations", violations}};
    if (!report.pass) code = kExitInfeasible;
  }
  emit(opt, out, doc.dump(2) + "\n");
  return code;
}

// ---- oracle ----------------------------------------------------------------

int run_oracle(const std::string& query, const Options& opt, const CLI::App& app,
               std::istream& in, std::ostream& out) {
  if (query != "opt-r" && app.count("--r") == 0) throw UsageError("oracle " + query + ": --r is required");
  if (query != "opt-k" && app.count("--k") == 0) throw UsageError("oracle " + query + ": --k is required");
  if (app.count("--delta") == 0) throw UsageError("oracle " + query + ": --delta is required");
  const auto p = load(read_input(opt.input, in), opt);
  const Objective objective = objective_from_string(opt.objective);
  const OracleMethod method = oracle_method_from_string(opt.method);
  json doc{{"query", query}, {"objective", opt.objective}, {"method", opt.method}, {"delta", opt.delta}};
  bool found = false;
  if (query == "feasible") {
    const auto verdict = oracle_feasible(p, opt.k, opt.r, opt.delta, objective, opt.budget, method);
    doc["k"] = opt.k;
    doc["r"] = opt.r;
    doc["feasible"] = verdict.feasible;
    if (verdict.witness) {
      doc["trajectories"] = clustering_to_json(*verdict.witness)["trajectories"];
      doc["stats"] = stats_to_json(compute_stats(p, *verdict.witness));
    }
    found = verdict.feasible;
  } else if (query == "opt-k") {
    const auto k = oracle_opt_k(p, opt.r, opt.delta, objective, opt.budget, method);
    doc["r"] = opt.r;
    doc["opt_k"] = k ? json(*k) : json(nullptr);
    found = k.has_value();
  } else {
    const auto best = oracle_opt_r(p, opt.k, opt.delta, objective, opt.budget, method);
    doc["k"] = opt.k;
    doc["opt_r"] = best ? json(best->r) : json(nullptr);
    if (best) doc["trajectories"] = clustering_to_json(best->witness)["trajectories"];
    found = best.has_value();
  }
  emit(opt, out, doc.dump(2) + "\n");
  return found ? kExitOk : kExitInfeasible;
}

// ---- generate --------------------------------------------------------------

int run_generate(const std::string& kind, const Options& opt, std::istream& in, std::ostream& out) {
  std::optional<GeneratedInstance> g;
  if (kind == "sat3") {
    g = gen_sat3(parse_dimacs(read_input(opt.input, in)), opt.gadget);
  } else if (kind == "setcover") {
    const SetCoverInstance sc =
        opt.example ? set_cover_example() : setcover_from_json(json::parse(read_input(opt.input, in)));
    g = gen_setcover_metric(sc);
  } else {
    g = gen_random_walkers(opt.walkers);
  }
  emit(opt, out, g->to_json().dump() + "\n");
  return kExitOk;
}

void add_io(CLI::App* app, Options& opt) {
  app->add_option("--input,-i", opt.input, "Input file, '-' for stdin")->capture_default_str();
  app->add_option("--output,-o", opt.output, "Output file (default stdout)");
}

void add_params(CLI::App* app, Options& opt) {
  app->add_option("--k", opt.k, "Cluster count")->check(CLI::NonNegativeNumber);
  app->add_option("--r", opt.r, "Spatial cost bound")->check(CLI::NonNegativeNumber);
  app->add_option("--delta", opt.delta, "Displacement bound")->check(CLI::NonNegativeNumber);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  Options opt;
  CLI::App app{"Temporal clustering: generate, solve, evaluate and oracle-check instances", "tclust"};
  app.require_subcommand(1);
  app.add_option("--tolerance", opt.tolerance,
                 "Absolute tolerance of <= comparisons (default: $TEMPORAL_CLUSTER_TOLERANCE or 0)")
      ->check(CLI::NonNegativeNumber);

  auto* generate = app.add_subcommand("generate", "Write a generated instance as JSON");
  generate->require_subcommand(1);
  auto* sat3 = generate->add_subcommand("sat3", "3-SAT gadget from a DIMACS formula");
  add_io(sat3, opt);
  sat3->add_option("--r0", opt.gadget.r0, "Gadget radius scale")->capture_default_str();
  sat3->add_option("--delta0", opt.gadget.delta0, "Motion step bound")->capture_default_str();
  sat3->add_option("--rho", opt.gadget.rho, "Separation factor")->capture_default_str();
  auto* setcover = generate->add_subcommand("setcover", "Dominating-set metric from a set-cover JSON");
  add_io(setcover, opt);
  setcover->add_flag("--example", opt.example, "Use the built-in six-element example");
  auto* walkers = generate->add_subcommand("walkers", "Random walks with a planted clustering");
  walkers->add_option("--output,-o", opt.output, "Output file (default stdout)");
  walkers->add_option("--seed", opt.walkers.seed)->capture_default_str();
  walkers->add_option("--k", opt.walkers.k)->check(CLI::PositiveNumber)->capture_default_str();
  walkers->add_option("--t", opt.walkers.t)->check(CLI::PositiveNumber)->capture_default_str();
  walkers->add_option("--extras", opt.walkers.extras_per_level)->capture_default_str();
  walkers->add_option("--step", opt.walkers.step)->check(CLI::NonNegativeNumber)->capture_default_str();
  walkers->add_option("--radius", opt.walkers.radius)->check(CLI::NonNegativeNumber)->capture_default_str();
  walkers->add_option("--dim", opt.walkers.dim)->check(CLI::PositiveNumber)->capture_default_str();

  auto* solve = app.add_subcommand("solve", "Run one of the solvers");
  add_io(solve, opt);
  add_params(solve, opt);
  solve->add_option("--algo", opt.algo, "Solver")
      ->required()
      ->check(CLI::IsMember({"exact-k", "rds-greedy", "bicriteria", "median-greedy", "means-greedy"}));
  solve->add_option("--epsilon", opt.epsilon, "Median/means accuracy")->capture_default_str();
  solve->add_option("--batch", opt.batch, "Solve every *.json in a directory, CSV output")
      ->check(CLI::ExistingDirectory);
  solve->add_option("--threads", opt.threads, "Batch worker threads (default: all cores)");
  solve->add_option("--dump-graph", opt.dump_graph, "Write G_delta(P) as JSON");
  solve->add_option("--dump-network", opt.dump_network, "Write the flow network as JSON");

  auto* eval = app.add_subcommand("eval", "Statistics of a clustering, optionally checked");
  add_io(eval, opt);
  add_params(eval, opt);
  eval->add_option("--clustering,-c", opt.clustering, "Clustering JSON ('trajectories' member)");
  eval->add_flag("--check", opt.check, "Check against --k, --r, --delta (exit 2 on violation)");
  eval->add_option("--objective", opt.objective)
      ->check(CLI::IsMember({"center", "median", "means"}))
      ->capture_default_str();

  auto* oracle = app.add_subcommand("oracle", "Exact brute-force answers for small instances");
  oracle->require_subcommand(1);
  std::vector<std::pair<std::string, CLI::App*>> queries;
  for (const char* name : {"feasible", "opt-k", "opt-r"}) {
    auto* q = oracle->add_subcommand(name);
    add_io(q, opt);
    add_params(q, opt);
    q->add_option("--objective", opt.objective)
        ->check(CLI::IsMember({"center", "median", "means"}))
        ->capture_default_str();
    q->add_option("--method", opt.method, "subsets or sweep")
        ->check(CLI::IsMember({"subsets", "sweep"}))
        ->capture_default_str();
    q->add_option("--max-trajectories", opt.budget.max_trajectories)->check(CLI::PositiveNumber);
    q->add_option("--max-subsets", opt.budget.max_subsets)->check(CLI::PositiveNumber);
    q->add_option("--max-sweep-work", opt.budget.max_sweep_work)->check(CLI::PositiveNumber);
    queries.emplace_back(name, q);
  }

  std::vector<std::string> argv_store{"tclust"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitFailure;
  }

  try {
    if (*generate) {
      for (auto* sub : {sat3, setcover, walkers}) {
        if (*sub) return run_generate(sub->get_name(), opt, in, out);
      }
    }
    if (*solve) return run_solve(opt, *solve, in, out);
    if (*eval) return run_eval(opt, *eval, in, out);
    for (const auto& [name, q] : queries) {
      if (*q) return run_oracle(name, opt, *q, in, out);
    }
  } catch (const std::exception& e) {
    err << "tclust: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace tclust
