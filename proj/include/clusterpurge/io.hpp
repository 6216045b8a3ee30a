#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "clusterpurge/core.hpp"
#include "clusterpurge/eval.hpp"
#include "clusterpurge/purging.hpp"
#include "clusterpurge/rd.hpp"

namespace cpurge::io {

/// Comma-separated numeric columns, decimal point, optional header line. A
/// final header column named "label" carries 0/1 outlier labels. Missing or
/// non-numeric values are rejected with their row and column.
Dataset read_dataset_csv(const std::filesystem::path& path);

/// On-disk clustering document. Cluster ids and observation indices are
/// 0-based in the file and converted at this boundary.
struct ClusteringFile {
  Clustering clustering;
  std::string backend;
  nlohmann::json params;
  std::uint64_t seed = 0;
};

ClusteringFile read_clustering_json(const std::filesystem::path& path);
void write_clustering_json(const std::filesystem::path& path, const Clustering& clustering,
                           const std::string& backend, const nlohmann::json& params,
                           std::uint64_t seed);

nlohmann::json clustering_to_json(const Clustering& clustering, const std::string& backend,
                                  const nlohmann::json& params, std::uint64_t seed);
Clustering clustering_from_json(const nlohmann::json& doc);

/// Report document: outlier indices (0-based), per-cluster purging
/// boundaries, hull vertices and segments, dropped/skipped diagnostics.
nlohmann::json report_to_json(const OutlierReport& report, const std::string& algorithm,
                              DistortionMeasure measure);
void write_report_json(const std::filesystem::path& path, const OutlierReport& report,
                       const std::string& algorithm, DistortionMeasure measure);
std::vector<bool> report_mask_from_json(const nlohmann::json& doc);

/// All (distortion, entropy) points with on-hull flags followed by the hull
/// segments, as one CSV with a row_type column.
std::string hull_csv(const std::vector<RdPoint>& points, const RateDistortionHull& hull);

std::string score_table_csv(const GridSearchResult& result);

GridSearchConfig read_grid_config_json(const std::filesystem::path& path);
GridSearchConfig grid_config_from_json(const nlohmann::json& doc);

std::string format_double(double value);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace cpurge::io
