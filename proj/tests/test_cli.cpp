#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <json.hpp>
#include <sstream>

#include "support.hpp"
#include "tclust/cli.hpp"
#include "tclust/generators.hpp"
#include "tclust/io.hpp"

using namespace tclust;
using nlohmann::json;
using tclust::testing::ids;
using tclust::testing::line_metric;

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("tclust_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) const {
    write_file((path / name).string(), text);
    return (path / name).string();
  }
};

std::string chain_instance() {
  return save_instance(TemporalSampling(line_metric({0, 1, 2}), {ids({0}), ids({1}), ids({2})}));
}

std::string far_instance() {
  return save_instance(TemporalSampling(line_metric({0, 10, 20}), {ids({0, 1, 2})}));
}

}  // namespace

TEST_CASE("exact-k on a chain exits 0") {
  TempDir dir;
  const auto path = dir.write("trivial.json", chain_instance());
  const auto r = run({"solve", "--algo", "exact-k", "--k", "1", "--r", "0", "--delta", "10", "--input", path});
  CHECK(r.code == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc["status"] == "feasible");
  CHECK(doc["trajectories"].size() == 1);
  CHECK(doc["guarantee"]["r"] == 0.0);
  CHECK(doc["guarantee"]["delta"] == 10.0);
}

TEST_CASE("net-size certificate exits 2") {
  const auto r = run({"solve", "--algo", "exact-k", "--k", "2", "--r", "1", "--delta", "0"}, far_instance());
  CHECK(r.code == 2);
  const auto doc = json::parse(r.out);
  CHECK(doc["status"] == "infeasible");
  CHECK(doc["certificate"]["message"] == "net-size 3 > k at level 0");
  CHECK(doc["certificate"]["reason"] == "net-size");
}

TEST_CASE("generate setcover piped into rds-greedy") {
  TempDir dir;
  const auto sc = dir.write("cover.json", setcover_to_json(set_cover_example()).dump());
  const auto gen = run({"generate", "setcover", "--input", sc});
  REQUIRE(gen.code == 0);
  CHECK(gen.out == run({"generate", "setcover", "--example"}).out);
  const auto r = run({"solve", "--algo", "rds-greedy", "--r", "1", "--delta", "0"}, gen.out);
  CHECK(r.code == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc["stats"]["k"] == 3);
  CHECK(doc["guarantee"]["k"] == 3);
}

TEST_CASE("usage and IO errors exit 1") {
  auto r = run({"solve", "--algo", "exact-k", "--k", "1", "--r", "0", "--delta", "1", "--input",
                "/nonexistent/file.json"});
  CHECK(r.code == 1);
  CHECK_FALSE(r.err.empty());
  CHECK(run({"solve", "--bogus"}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"solve", "--algo", "nope", "--r", "1", "--delta", "1"}, chain_instance()).code == 1);
  CHECK(run({"solve", "--algo", "exact-k", "--r", "1", "--delta", "1"}, chain_instance()).code == 1);
  CHECK(run({"solve", "--algo", "exact-k", "--k", "1", "--r", "-1", "--delta", "1"}, chain_instance()).code == 1);
  CHECK(run({"solve", "--algo", "median-greedy", "--k", "1", "--r", "1", "--delta", "1", "--epsilon", "0"},
            chain_instance()).code == 1);
  r = run({"solve", "--algo", "exact-k", "--k", "1", "--r", "0", "--delta", "1"}, "{not json");
  CHECK(r.code == 1);
  CHECK(r.err.find("tclust:") == 0);
  CHECK(run({"eval", "--k", "1"}, chain_instance()).code == 1);
  CHECK(run({"oracle", "feasible", "--k", "1", "--delta", "1"}, chain_instance()).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("solve output passes eval --check with the guaranteed bounds") {
  TempDir dir;
  const auto g = gen_random_walkers(WalkerParams{7, 2, 4, 2, 1.0, 1.0, 2});
  const auto inst = dir.write("walk.json", save_instance(g.sampling));
  const std::vector<std::vector<std::string>> solves{
      {"--algo", "exact-k", "--k", "2"},
      {"--algo", "bicriteria", "--k", "2"},
      {"--algo", "rds-greedy"},
      {"--algo", "median-greedy", "--k", "2", "--r", "40"},
      {"--algo", "means-greedy", "--k", "2", "--r", "80"},
  };
  for (auto extra : solves) {
    if (std::find(extra.begin(), extra.end(), "--r") == extra.end()) extra.insert(extra.end(), {"--r", "1"});
    std::vector<std::string> args{"solve", "-i", inst, "--delta", "1"};
    args.insert(args.end(), extra.begin(), extra.end());
    const auto r = run(args);
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    const auto clustering = dir.write("c.json", r.out);
    const auto& gu = doc["guarantee"];
    const auto check = run({"eval", "-i", inst, "-c", clustering, "--check", "--k", gu["k"].dump(), "--r",
                            gu["r"].dump(), "--delta", gu["delta"].dump(), "--objective",
                            gu["objective"].get<std::string>()});
    CHECK(check.code == 0);
    CHECK(json::parse(check.out)["check"]["pass"] == true);
    // Determinism.
    CHECK(run(args).out == r.out);
  }
}

TEST_CASE("eval --check reports violations with exit 2") {
  TempDir dir;
  const auto inst = dir.write("far.json", far_instance());
  const auto c = dir.write("c.json", R"({"trajectories":[[0]]})");
  const auto r = run({"eval", "-i", inst, "-c", c, "--check", "--k", "1", "--r", "1", "--delta", "0"});
  CHECK(r.code == 2);
  const auto doc = json::parse(r.out);
  CHECK(doc["check"]["pass"] == false);
  CHECK(doc["check"]["violations"][0]["bound"] == "radius");
  CHECK(doc["stats"]["rad_inf"] == 20.0);
  CHECK(run({"eval", "-i", inst, "-c", c}).code == 0);
}

TEST_CASE("oracle subcommands") {
  const auto cover = run({"generate", "setcover", "--example"}).out;
  auto r = run({"oracle", "opt-k", "--r", "1", "--delta", "0"}, cover);
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["opt_k"] == 3);
  r = run({"oracle", "feasible", "--k", "2", "--r", "1", "--delta", "0", "--method", "sweep"}, cover);
  CHECK(r.code == 2);
  CHECK(json::parse(r.out)["feasible"] == false);
  r = run({"oracle", "opt-r", "--k", "1", "--delta", "0", "--objective", "median"}, far_instance());
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["opt_r"] == 20.0);
  r = run({"oracle", "opt-r", "--k", "1", "--delta", "0", "--max-subsets", "1", "--objective", "median"},
          far_instance());
  CHECK(r.code == 1);
}

TEST_CASE("batch CSV is ordered by name") {
  TempDir dir;
  dir.write("b.json", far_instance());
  dir.write("a.json", chain_instance());
  dir.write("c.json", "{broken");
  dir.write("notes.txt", "ignored");
  const auto r = run({"solve", "--algo", "exact-k", "--k", "1", "--r", "0", "--delta", "1", "--batch",
                      dir.path.string(), "--threads", "3"});
  CHECK(r.code == 1);
  std::istringstream lines(r.out);
  std::vector<std::string> rows;
  for (std::string line; std::getline(lines, line);) rows.push_back(line);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "name,status,k,rad_inf,rad_1,rad_2,delta,detail");
  CHECK(rows[1].rfind("a.json,feasible,1,", 0) == 0);
  CHECK(rows[2].rfind("b.json,infeasible,", 0) == 0);
  CHECK(rows[3].rfind("c.json,error,", 0) == 0);
  const auto single = run({"solve", "--algo", "exact-k", "--k", "1", "--r", "0", "--delta", "1", "--batch",
                           dir.path.string(), "--threads", "1"});
  CHECK(single.out == r.out);
}

TEST_CASE("tolerance from flag and environment") {
  // Distances 1, 1 and 2.0000001: the triangle check only passes with slack.
  const std::string inst =
      R"({"metric":{"kind":"matrix","n":3,"dist":[[0,1,2.0000001],[1,0,1],[2.0000001,1,0]]},"levels":[[0,1,2]]})";
  const std::vector<std::string> args{"solve", "--algo", "rds-greedy", "--r", "1", "--delta", "0"};
  CHECK(run(args, inst).code == 1);
  ::setenv("TEMPORAL_CLUSTER_TOLERANCE", "1e-6", 1);
  const auto relaxed = run(args, inst);
  CHECK(relaxed.code == 0);
  CHECK(json::parse(relaxed.out)["stats"]["k"] == 1);
  ::setenv("TEMPORAL_CLUSTER_TOLERANCE", "abc", 1);
  CHECK(run(args, inst).code == 1);
  ::unsetenv("TEMPORAL_CLUSTER_TOLERANCE");
  auto with_flag = args;
  with_flag.insert(with_flag.begin(), {"--tolerance", "1e-6"});
  CHECK(run(with_flag, inst).code == 0);
}

TEST_CASE("generate is deterministic and loadable") {
  const auto a = run({"generate", "walkers", "--seed", "5", "--k", "3", "--t", "4"});
  REQUIRE(a.code == 0);
  CHECK(a.out == run({"generate", "walkers", "--seed", "5", "--k", "3", "--t", "4"}).out);
  const auto doc = json::parse(a.out);
  CHECK(doc["k"] == 3);
  CHECK(doc["planted"]["trajectories"].size() == 3);
  CHECK(load_instance(a.out).length() == 4);

  const auto sat = run({"generate", "sat3", "--rho", "4"}, "p cnf 3 1\n1 2 3 0\n");
  REQUIRE(sat.code == 0);
  CHECK(json::parse(sat.out)["metadata"]["rho"] == 4.0);
  CHECK(run({"generate", "sat3"}, "p cnf 3 1\n1 2 0\n").code == 1);
}

TEST_CASE("debug dumps") {
  TempDir dir;
  const auto graph = (dir.path / "g.json").string();
  const auto net = (dir.path / "n.json").string();
  const auto r = run({"solve", "--algo", "exact-k", "--k", "1", "--r", "0", "--delta", "1", "--dump-graph",
                      graph, "--dump-network", net},
                     chain_instance());
  CHECK(r.code == 0);
  CHECK(json::parse(read_file(graph)).is_object());
  CHECK(json::parse(read_file(net)).is_object());
  CHECK(run({"solve", "--algo", "rds-greedy", "--r", "0", "--delta", "1", "--dump-network", net},
            chain_instance()).code == 1);
}
