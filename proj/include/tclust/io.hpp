#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "tclust/sampling.hpp"

namespace tclust {

// Instance document:
//   { "metric": {"kind":"euclidean","dim":D} | {"kind":"matrix","n":N,"dist":[[...]]},
//     "points": [[x, y, ...], ...],   // euclidean only, index = PointId
//     "levels": [[id, ...], ...] }
// Clustering document: { "trajectories": [[id per level, ...], ...] }
// Stats document: { "k":K, "rad_inf":R, "rad_1":R1, "rad_2":R2, "delta":D }
//
// Parse failures throw ParseError whose message starts with the JSON path of
// the offending value.

struct LoadOptions {
  // Skips the O(n^3) metric check on explicit matrices.
  bool validate_metric = true;
  double tolerance = 0.0;
};

TemporalSampling instance_from_json(const nlohmann::json& doc,
                                    const LoadOptions& options = {});
nlohmann::json instance_to_json(const TemporalSampling& p);

Clustering clustering_from_json(const nlohmann::json& doc);
nlohmann::json clustering_to_json(const Clustering& c);

nlohmann::json stats_to_json(const ClusteringStats& s);

TemporalSampling load_instance(std::string_view text,
                               const LoadOptions& options = {});
std::string save_instance(const TemporalSampling& p);
Clustering load_clustering(std::string_view text);
std::string save_clustering(const Clustering& c);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace tclust
