#include "clusterpurge/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

namespace cpurge::io {

namespace {

using nlohmann::json;

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

bool parse_double(const std::string& token, double& out) {
  const std::string t = trim(token);
  if (t.empty()) return false;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

[[noreturn]] void csv_error(const std::filesystem::path& path, std::size_t row,
                            std::size_t column, const std::string& what) {
  throw std::invalid_argument(path.string() + ": row " + std::to_string(row) +
                              ", column " + std::to_string(column) + ": " + what);
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string format_double(double value) {
  char buffer[32];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

Dataset read_dataset_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open dataset file: " + path.string());

  std::string line;
  std::size_t row = 0;
  std::size_t columns = 0;
  bool saw_header = false;
  bool has_label = false;
  std::vector<double> values;
  std::vector<bool> labels;
  std::size_t n = 0;

  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) {
      if (n == 0 && !saw_header) continue;  // leading blank lines only
      csv_error(path, row, 1, "blank line inside data");
    }
    const std::vector<std::string> fields = split_csv_line(line);
    if (columns == 0) {
      columns = fields.size();
      double probe;
      bool all_numeric = true;
      for (const std::string& f : fields)
        if (!parse_double(f, probe)) all_numeric = false;
      if (!all_numeric) {
        saw_header = true;
        has_label = trim(fields.back()) == "label";
        if (has_label && columns < 2)
          csv_error(path, row, 1, "label column requires at least one feature column");
        continue;
      }
    }
    if (fields.size() != columns)
      csv_error(path, row, fields.size(),
                "expected " + std::to_string(columns) + " fields, found " +
                    std::to_string(fields.size()));
    for (std::size_t c = 0; c < fields.size(); ++c) {
      double value;
      if (!parse_double(fields[c], value))
        csv_error(path, row, c + 1, "not a finite number: '" + trim(fields[c]) + "'");
      if (has_label && c + 1 == columns) {
        if (value != 0.0 && value != 1.0)
          csv_error(path, row, c + 1, "label must be 0 or 1");
        labels.push_back(value == 1.0);
      } else {
        values.push_back(value);
      }
    }
    ++n;
  }
  if (n == 0) throw std::invalid_argument(path.string() + ": no observations");
  const std::size_t d = has_label ? columns - 1 : columns;
  return Dataset(d, std::move(values),
                 has_label ? std::optional<std::vector<bool>>(std::move(labels))
                           : std::nullopt);
}

json clustering_to_json(const Clustering& clustering, const std::string& backend,
                        const json& params, std::uint64_t seed) {
  json doc;
  doc["n"] = clustering.size();
  json assignments = json::array();
  for (std::size_t c : clustering.assignments()) assignments.push_back(c - 1);
  doc["assignments"] = std::move(assignments);
  json rep;
  if (clustering.centroid_based()) {
    const auto& c = std::get<CentroidRepresentation>(clustering.representation());
    rep["kind"] = "centroids";
    json rows = json::array();
    for (std::size_t g = 1; g <= clustering.num_clusters(); ++g) {
      const auto span = c.centroid(g);
      rows.push_back(json(std::vector<double>(span.begin(), span.end())));
    }
    rep["values"] = std::move(rows);
  } else {
    const auto& nn = std::get<NearestNeighborRepresentation>(clustering.representation());
    rep["kind"] = "nearest_neighbor";
    rep["values"] = nn.representative;
  }
  doc["representation"] = std::move(rep);
  doc["backend"] = backend;
  doc["params"] = params;
  doc["seed"] = seed;
  return doc;
}

Clustering clustering_from_json(const json& doc) {
  const std::size_t n = doc.at("n").get<std::size_t>();
  std::vector<std::size_t> assignments;
  for (const auto& value : doc.at("assignments"))
    assignments.push_back(value.get<std::size_t>() + 1);  // 0-based on disk
  if (assignments.size() != n)
    throw std::invalid_argument("clustering file: assignments length differs from n");

  const json& rep = doc.at("representation");
  const std::string kind = rep.at("kind").get<std::string>();
  if (kind == "centroids") {
    CentroidRepresentation centroids;
    const json& rows = rep.at("values");
    for (const auto& r : rows) {
      const auto row = r.get<std::vector<double>>();
      if (centroids.dim == 0) centroids.dim = row.size();
      if (row.size() != centroids.dim || row.empty())
        throw std::invalid_argument("clustering file: ragged centroid rows");
      centroids.values.insert(centroids.values.end(), row.begin(), row.end());
    }
    return Clustering(std::move(assignments), std::move(centroids));
  }
  if (kind == "nearest_neighbor") {
    NearestNeighborRepresentation nn;
    nn.representative = rep.at("values").get<std::vector<std::size_t>>();
    return Clustering(std::move(assignments), std::move(nn));
  }
  throw std::invalid_argument("clustering file: unknown representation kind '" + kind +
                              "'");
}

ClusteringFile read_clustering_json(const std::filesystem::path& path) {
  json doc;
  try {
    doc = json::parse(read_text(path));
  } catch (const json::exception& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
  try {
    ClusteringFile file{clustering_from_json(doc), doc.value("backend", ""),
                        doc.value("params", json::object()),
                        doc.value("seed", std::uint64_t{0})};
    return file;
  } catch (const json::exception& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

void write_clustering_json(const std::filesystem::path& path, const Clustering& clustering,
                           const std::string& backend, const json& params,
                           std::uint64_t seed) {
  write_text(path, clustering_to_json(clustering, backend, params, seed).dump(2) + "\n");
}

json report_to_json(const OutlierReport& report, const std::string& algorithm,
                    DistortionMeasure measure) {
  json doc;
  doc["algorithm"] = algorithm;
  doc["measure"] = to_string(measure);
  doc["n"] = report.is_outlier.size();
  doc["outliers"] = report.outliers();
  doc["is_outlier"] = report.is_outlier;
  json tested = json::array();
  for (const TestedClustering& t : report.tested) {
    json entry;
    entry["clustering"] = t.clustering_id;
    entry["segment"] = t.segment;
    entry["kappa"] = t.kappa;
    entry["thresholds"] = t.thresholds;
    tested.push_back(std::move(entry));
  }
  doc["tested"] = std::move(tested);
  if (report.hull) {
    json hull;
    json vertices = json::array();
    for (const RdPoint& v : report.hull->vertices())
      vertices.push_back(
          {{"clustering", v.clustering_id}, {"distortion", v.distortion}, {"entropy", v.entropy}});
    hull["vertices"] = std::move(vertices);
    json segments = json::array();
    for (std::size_t i = 2; i <= report.hull->vertex_count(); ++i)
      segments.push_back({{"index", i},
                          {"kappa", report.hull->slope(i)},
                          {"delta", report.hull->intercept(i)}});
    hull["segments"] = std::move(segments);
    doc["hull"] = std::move(hull);
  } else {
    doc["hull"] = nullptr;
  }
  doc["dropped_clusterings"] = report.dropped_clusterings;
  doc["skipped_segments"] = report.skipped_segments;
  return doc;
}

void write_report_json(const std::filesystem::path& path, const OutlierReport& report,
                       const std::string& algorithm, DistortionMeasure measure) {
  write_text(path, report_to_json(report, algorithm, measure).dump(2) + "\n");
}

std::vector<bool> report_mask_from_json(const json& doc) {
  return doc.at("is_outlier").get<std::vector<bool>>();
}

std::string hull_csv(const std::vector<RdPoint>& points, const RateDistortionHull& hull) {
  std::vector<bool> on_hull(points.size(), false);
  for (const RdPoint& v : hull.vertices())
    for (std::size_t i = 0; i < points.size(); ++i)
      if (points[i].clustering_id == v.clustering_id) on_hull[i] = true;

  std::string out = "row_type,clustering,distortion,entropy,on_hull,segment,kappa,delta\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    out += "point," + std::to_string(points[i].clustering_id) + ',' +
           format_double(points[i].distortion) + ',' + format_double(points[i].entropy) +
           ',' + (on_hull[i] ? "1" : "0") + ",,,\n";
  }
  for (std::size_t i = 2; i <= hull.vertex_count(); ++i) {
    out += "segment,,,,," + std::to_string(i) + ',' + format_double(hull.slope(i)) + ',' +
           format_double(hull.intercept(i)) + "\n";
  }
  return out;
}

std::string score_table_csv(const GridSearchResult& result) {
  std::string out =
      "backend,detector,k,min_pts,eps,kappa,outlier_f1,inlier_f1,combined_f1,"
      "cluster_ms,detect_ms,error\n";
  for (const GridPointResult& row : result.table) {
    out += to_string(row.backend) + ',' + to_string(row.detector) + ',';
    out += row.k ? std::to_string(*row.k) : "";
    out += ',';
    out += row.min_pts ? std::to_string(*row.min_pts) : "";
    out += ',';
    out += row.eps ? format_double(*row.eps) : "";
    out += ',';
    out += row.kappa ? format_double(*row.kappa) : "";
    out += ',';
    out += format_double(row.outlier_f1) + ',' + format_double(row.inlier_f1) + ',' +
           format_double(row.combined_f1) + ',' + format_double(row.cluster_ms) + ',' +
           format_double(row.detect_ms) + ',' + csv_escape(row.error) + "\n";
  }
  return out;
}

namespace {

std::vector<std::size_t> size_grid(const json& node, const char* what) {
  std::vector<std::size_t> out;
  if (node.is_array()) {
    for (const auto& v : node) out.push_back(v.get<std::size_t>());
  } else if (node.is_object()) {
    const auto lo = node.at("min").get<std::size_t>();
    const auto hi = node.at("max").get<std::size_t>();
    if (hi < lo) throw std::invalid_argument(std::string(what) + ": max below min");
    for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
  } else {
    throw std::invalid_argument(std::string(what) + ": expected array or {min,max}");
  }
  return out;
}

}  // namespace

GridSearchConfig grid_config_from_json(const json& doc) {
  GridSearchConfig config;
  config.backend = parse_backend(doc.at("backend").get<std::string>());
  config.detector = parse_detector(doc.at("detector").get<std::string>());
  if (doc.contains("measure"))
    config.measure = parse_measure(doc["measure"].get<std::string>());
  if (doc.contains("strategy"))
    config.strategy = parse_strategy(doc["strategy"].get<std::string>());
  if (doc.contains("target")) {
    const std::string target = doc["target"].get<std::string>();
    if (target == "outlier_f1") config.target = SearchTarget::outlier_f1;
    else if (target == "combined_f1") config.target = SearchTarget::combined_f1;
    else throw std::invalid_argument("unknown search target: " + target);
  }
  if (doc.contains("kmeans")) {
    const json& node = doc["kmeans"];
    if (node.contains("k")) config.kmeans_k = size_grid(node["k"], "kmeans.k");
    if (node.contains("n_start")) config.n_start = node["n_start"].get<std::size_t>();
    if (node.contains("seed")) config.seed = node["seed"].get<std::uint64_t>();
  }
  if (doc.contains("hac") && doc["hac"].contains("k"))
    config.hac_k = size_grid(doc["hac"]["k"], "hac.k");
  if (doc.contains("dbscan")) {
    const json& node = doc["dbscan"];
    if (node.contains("min_pts"))
      config.dbscan_min_pts = size_grid(node["min_pts"], "dbscan.min_pts");
    if (node.contains("eps")) config.dbscan_eps = node["eps"].get<std::vector<double>>();
  }
  if (doc.contains("kappa")) {
    const json& node = doc["kappa"];
    if (node.contains("min")) config.kappa_min = node["min"].get<double>();
    if (node.contains("max")) config.kappa_max = node["max"].get<double>();
    if (node.contains("steps")) {
      if (node["steps"].is_string() && node["steps"].get<std::string>() == "n")
        config.paper_kappa_steps = true;
      else
        config.kappa_steps = node["steps"].get<std::size_t>();
    }
  }
  if (doc.contains("jobs")) config.jobs = doc["jobs"].get<std::size_t>();
  return config;
}

GridSearchConfig read_grid_config_json(const std::filesystem::path& path) {
  json doc;
  try {
    doc = json::parse(read_text(path));
  } catch (const json::exception& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
  try {
    return grid_config_from_json(doc);
  } catch (const json::exception& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + path.string());
  out << text;
  if (!out) throw std::invalid_argument("failed writing: " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace cpurge::io
