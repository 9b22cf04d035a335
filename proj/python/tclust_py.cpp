// Python bindings. Instances are opaque handles; results come back as plain
// dicts and lists.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>
#include <sstream>

#include "tclust/cli.hpp"
#include "tclust/error.hpp"
#include "tclust/generators.hpp"
#include "tclust/io.hpp"
#include "tclust/kcenter.hpp"
#include "tclust/median.hpp"
#include "tclust/oracle.hpp"

namespace py = pybind11;
using nlohmann::json;
using namespace tclust;

namespace {

py::object to_py(const json& doc) {
  return py::module_::import("json").attr("loads")(doc.dump());
}

json from_py(const py::object& obj) {
  if (py::isinstance<py::str>(obj)) return json::parse(obj.cast<std::string>());
  return json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

json outcome_json(const TemporalSampling& p, const SolveOutcome& out) {
  if (!out.feasible()) return {{"status", "infeasible"}, {"certificate", out.certificate().to_json()}};
  return {{"status", "feasible"},
          {"trajectories", clustering_to_json(out.clustering())["trajectories"]},
          {"stats", stats_to_json(compute_stats(p, out.clustering()))}};
}

TemporalSampling load(const py::object& doc, double tolerance) {
  LoadOptions lo;
  lo.tolerance = tolerance;
  return instance_from_json(from_py(doc), lo);
}

py::object generated(const GeneratedInstance& g) { return to_py(g.to_json()); }

}  // namespace

PYBIND11_MODULE(_tclust, m) {
  m.doc() = "Temporal clustering solvers";

  py::register_exception<Error>(m, "TclustError", PyExc_ValueError);
  py::register_exception<BudgetExceededError>(m, "BudgetExceededError", PyExc_RuntimeError);

  py::class_<TemporalSampling>(m, "Instance")
      .def(py::init([](const py::object& doc, double tolerance) { return load(doc, tolerance); }),
           py::arg("doc"), py::arg("tolerance") = 0.0)
      .def_property_readonly("length", &TemporalSampling::length)
      .def_property_readonly("size", &TemporalSampling::size)
      .def("level", [](const TemporalSampling& p, std::size_t i) {
        if (i >= p.length()) throw py::index_error("level out of range");
        std::vector<std::size_t> out;
        for (PointId q : p.level(i)) out.push_back(q.index);
        return out;
      })
      .def("to_json", [](const TemporalSampling& p) { return to_py(instance_to_json(p)); });

  m.def("solve_exact_k", [](const TemporalSampling& p, std::size_t k, double r, double delta) {
    return to_py(outcome_json(p, solve_exact_k(p, k, r, delta)));
  }, py::arg("instance"), py::arg("k"), py::arg("r"), py::arg("delta"));
  m.def("solve_bicriteria", [](const TemporalSampling& p, std::size_t k, double r, double delta) {
    return to_py(outcome_json(p, solve_bicriteria(p, k, r, delta)));
  }, py::arg("instance"), py::arg("k"), py::arg("r"), py::arg("delta"));
  m.def("solve_rds_greedy", [](const TemporalSampling& p, double r, double delta) {
    return to_py(outcome_json(p, solve_rds_greedy(p, r, delta)));
  }, py::arg("instance"), py::arg("r"), py::arg("delta"));
  m.def("solve_median_greedy",
        [](const TemporalSampling& p, std::size_t k, double r, double delta, double epsilon,
           const std::string& objective) {
          const auto run = median_greedy(p, {k, r, delta, epsilon, objective_from_string(objective)});
          auto doc = outcome_json(p, run.outcome);
          doc["potentials"] = run.potentials;
          doc["iteration_limit"] = run.iteration_limit;
          doc["used_flow"] = run.used_flow;
          return to_py(doc);
        },
        py::arg("instance"), py::arg("k"), py::arg("r"), py::arg("delta"), py::arg("epsilon") = 0.1,
        py::arg("objective") = "median");
  m.def("solve_median_r0", [](const TemporalSampling& p, std::size_t k, double delta) {
    return to_py(outcome_json(p, solve_median_r0(p, k, delta)));
  }, py::arg("instance"), py::arg("k"), py::arg("delta"));

  m.def("check_solution",
        [](const TemporalSampling& p, const py::object& clustering, std::size_t k, double r, double delta,
           const std::string& objective) {
          const auto c = clustering_from_json(from_py(clustering));
          const auto report = check_solution(p, c, k, r, delta, objective_from_string(objective));
          return to_py({{"pass", report.pass},
                        {"violations", report.describe()},
                        {"stats", stats_to_json(report.stats)}});
        },
        py::arg("instance"), py::arg("clustering"), py::arg("k"), py::arg("r"), py::arg("delta"),
        py::arg("objective") = "center");

  m.def("oracle_feasible",
        [](const TemporalSampling& p, std::size_t k, double r, double delta, const std::string& objective,
           const std::string& method) {
          const auto v = oracle_feasible(p, k, r, delta, objective_from_string(objective), {},
                                         oracle_method_from_string(method));
          json doc{{"feasible", v.feasible}};
          if (v.witness) doc["trajectories"] = clustering_to_json(*v.witness)["trajectories"];
          return to_py(doc);
        },
        py::arg("instance"), py::arg("k"), py::arg("r"), py::arg("delta"), py::arg("objective") = "center",
        py::arg("method") = "subsets");
  m.def("oracle_opt_k",
        [](const TemporalSampling& p, double r, double delta, const std::string& objective,
           const std::string& method) {
          return oracle_opt_k(p, r, delta, objective_from_string(objective), {}, oracle_method_from_string(method));
        },
        py::arg("instance"), py::arg("r"), py::arg("delta"), py::arg("objective") = "center",
        py::arg("method") = "subsets");
  m.def("oracle_opt_r",
        [](const TemporalSampling& p, std::size_t k, double delta, const std::string& objective,
           const std::string& method) -> std::optional<double> {
          const auto best =
              oracle_opt_r(p, k, delta, objective_from_string(objective), {}, oracle_method_from_string(method));
          if (!best) return std::nullopt;
          return best->r;
        },
        py::arg("instance"), py::arg("k"), py::arg("delta"), py::arg("objective") = "center",
        py::arg("method") = "subsets");

  m.def("gen_sat3", [](const std::string& dimacs, double r0, double delta0, double rho) {
    return generated(gen_sat3(parse_dimacs(dimacs), {r0, delta0, rho}));
  }, py::arg("dimacs"), py::arg("r0") = 4.0, py::arg("delta0") = 1.0, py::arg("rho") = 5.0);
  m.def("gen_setcover", [](const py::object& doc) {
    return generated(gen_setcover_metric(setcover_from_json(from_py(doc))));
  }, py::arg("doc"));
  m.def("gen_walkers",
        [](std::uint64_t seed, std::size_t k, std::size_t t, std::size_t extras, double step, double radius,
           std::size_t dim) { return generated(gen_random_walkers({seed, k, t, extras, step, radius, dim})); },
        py::arg("seed") = 1, py::arg("k") = 2, py::arg("t") = 3, py::arg("extras") = 2, py::arg("step") = 1.0,
        py::arg("radius") = 1.0, py::arg("dim") = 2);

  m.def("run_cli", [](const std::vector<std::string>& args, const std::string& stdin_text) {
    std::istringstream in(stdin_text);
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, in, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), py::arg("stdin") = "");
}
