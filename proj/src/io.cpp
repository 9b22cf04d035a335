#include "tclust/io.hpp"

#include <fstream>
#include <sstream>

#include "tclust/error.hpp"

namespace tclust {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

const json& member(const json& obj, const std::string& key,
                   const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(where, "missing key '" + key + "'");
  return *it;
}

std::size_t as_index(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    fail(where, "expected a nonnegative integer");
  }
  return v.get<std::size_t>();
}

double as_real(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  return v.get<double>();
}

const json& as_array(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array");
  return v;
}

std::vector<double> real_row(const json& v, const std::string& where) {
  std::vector<double> out;
  const auto& arr = as_array(v, where);
  out.reserve(arr.size());
  for (std::size_t j = 0; j < arr.size(); ++j) {
    out.push_back(as_real(arr[j], where + "[" + std::to_string(j) + "]"));
  }
  return out;
}

std::vector<PointId> id_row(const json& v, const std::string& where) {
  std::vector<PointId> out;
  const auto& arr = as_array(v, where);
  out.reserve(arr.size());
  for (std::size_t j = 0; j < arr.size(); ++j) {
    out.push_back({as_index(arr[j], where + "[" + std::to_string(j) + "]")});
  }
  return out;
}

json parse_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("$: malformed JSON: ") + e.what());
  }
}

}  // namespace

TemporalSampling instance_from_json(const json& doc,
                                    const LoadOptions& options) {
  const auto& metric_doc = member(doc, "metric", "$");
  const auto& kind = member(metric_doc, "kind", "$.metric");
  if (!kind.is_string()) fail("$.metric.kind", "expected a string");

  auto build_metric = [&]() -> FiniteMetric {
    const auto k = kind.get<std::string>();
    try {
      if (k == "euclidean") {
        const std::size_t dim = as_index(member(metric_doc, "dim", "$.metric"),
                                         "$.metric.dim");
        const auto& pts = as_array(member(doc, "points", "$"), "$.points");
        std::vector<std::vector<double>> coords;
        coords.reserve(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
          coords.push_back(real_row(pts[i], "$.points[" + std::to_string(i) + "]"));
        }
        return FiniteMetric::euclidean(dim, coords);
      }
      if (k == "matrix") {
        const std::size_t n =
            as_index(member(metric_doc, "n", "$.metric"), "$.metric.n");
        const auto& dist =
            as_array(member(metric_doc, "dist", "$.metric"), "$.metric.dist");
        if (dist.size() != n) {
          fail("$.metric.dist", "expected " + std::to_string(n) + " rows");
        }
        std::vector<std::vector<double>> rows;
        rows.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
          rows.push_back(
              real_row(dist[i], "$.metric.dist[" + std::to_string(i) + "]"));
        }
        return FiniteMetric::from_matrix(rows, options.validate_metric,
                                         options.tolerance);
      }
    } catch (const ValidationError& e) {
      throw ValidationError(std::string("$.metric: ") + e.what());
    }
    fail("$.metric.kind", "unknown metric kind '" + k + "'");
  };
  FiniteMetric metric = build_metric().with_tolerance(options.tolerance);

  const auto& levels_doc = as_array(member(doc, "levels", "$"), "$.levels");
  if (levels_doc.empty()) fail("$.levels", "no levels");
  std::vector<std::vector<PointId>> levels;
  levels.reserve(levels_doc.size());
  for (std::size_t i = 0; i < levels_doc.size(); ++i) {
    const std::string where = "$.levels[" + std::to_string(i) + "]";
    auto row = id_row(levels_doc[i], where);
    if (row.empty()) fail(where, "empty level");
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (!metric.contains(row[j])) {
        fail(where + "[" + std::to_string(j) + "]",
             "point id " + std::to_string(row[j].index) + " out of range");
      }
    }
    levels.push_back(std::move(row));
  }
  try {
    return TemporalSampling(std::move(metric), std::move(levels));
  } catch (const InvalidArgumentError& e) {
    throw ParseError(std::string("$.levels: ") + e.what());
  }
}

json instance_to_json(const TemporalSampling& p) {
  const auto& m = p.metric();
  json doc;
  if (m.kind() == FiniteMetric::Kind::euclidean) {
    doc["metric"] = {{"kind", "euclidean"}, {"dim", m.dim()}};
    json pts = json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
      auto c = m.coords({i});
      pts.push_back(std::vector<double>(c.begin(), c.end()));
    }
    doc["points"] = std::move(pts);
  } else {
    json rows = json::array();
    const auto flat = m.matrix();
    for (std::size_t i = 0; i < m.size(); ++i) {
      rows.push_back(std::vector<double>(flat.begin() + i * m.size(),
                                         flat.begin() + (i + 1) * m.size()));
    }
    doc["metric"] = {{"kind", "matrix"}, {"n", m.size()}, {"dist", std::move(rows)}};
  }
  json levels = json::array();
  for (const auto& level : p.levels()) {
    json row = json::array();
    for (PointId id : level) row.push_back(id.index);
    levels.push_back(std::move(row));
  }
  doc["levels"] = std::move(levels);
  return doc;
}

Clustering clustering_from_json(const json& doc) {
  const auto& arr = as_array(member(doc, "trajectories", "$"), "$.trajectories");
  Clustering c;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    c.trajectories.push_back(
        {id_row(arr[i], "$.trajectories[" + std::to_string(i) + "]")});
  }
  return c;
}

json clustering_to_json(const Clustering& c) {
  json arr = json::array();
  for (const auto& tau : c.trajectories) {
    json row = json::array();
    for (PointId id : tau.points) row.push_back(id.index);
    arr.push_back(std::move(row));
  }
  return {{"trajectories", std::move(arr)}};
}

json stats_to_json(const ClusteringStats& s) {
  return {{"k", s.k},
          {"rad_inf", s.rad_inf},
          {"rad_1", s.rad_1},
          {"rad_2", s.rad_2},
          {"delta", s.delta}};
}

TemporalSampling load_instance(std::string_view text,
                               const LoadOptions& options) {
  return instance_from_json(parse_text(text), options);
}

std::string save_instance(const TemporalSampling& p) {
  return instance_to_json(p).dump();
}

Clustering load_clustering(std::string_view text) {
  return clustering_from_json(parse_text(text));
}

std::string save_clustering(const Clustering& c) {
  return clustering_to_json(c).dump();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace tclust
