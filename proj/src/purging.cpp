#include "clusterpurge/purging.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace cpurge {

std::vector<std::size_t> OutlierReport::outliers() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < is_outlier.size(); ++j)
    if (is_outlier[j]) out.push_back(j);
  return out;
}

std::size_t OutlierReport::outlier_count() const {
  return static_cast<std::size_t>(
      std::count(is_outlier.begin(), is_outlier.end(), true));
}

PurgedVariant make_purged_variant(const Dataset& data, const Clustering& clustering,
                                  std::size_t j, std::size_t base_clustering) {
  if (clustering.size() != data.size())
    throw std::invalid_argument("make_purged_variant: clustering and dataset sizes differ");
  if (j >= data.size())
    throw std::invalid_argument("make_purged_variant: observation index out of range");

  PurgedVariant variant;
  variant.base_clustering = base_clustering;
  variant.purged = j;
  variant.assignments = clustering.assignments();
  variant.sizes = clustering.sizes();
  const std::size_t nu = clustering.num_clusters();
  --variant.sizes[variant.assignments[j] - 1];
  variant.sizes.push_back(1);
  variant.assignments[j] = nu + 1;

  if (clustering.centroid_based()) {
    auto rep = std::get<CentroidRepresentation>(clustering.representation());
    const auto x = data.point(j);
    rep.values.insert(rep.values.end(), x.begin(), x.end());
    variant.representation = std::move(rep);
  } else {
    auto rep = std::get<NearestNeighborRepresentation>(clustering.representation());
    rep.representative[j] = j;
    variant.representation = std::move(rep);
  }
  return variant;
}

double representivity_estimate(const Dataset& data, const PurgedVariant& modified,
                               const RateDistortionHull& hull, std::size_t segment,
                               DistortionMeasure measure, LogBase base) {
  if (modified.assignments.size() != data.size())
    throw std::invalid_argument("representivity_estimate: variant and dataset sizes differ");
  double distortion = 0.0;
  for (std::size_t j = 0; j < data.size(); ++j)
    distortion += point_distortion(
        measure, data.point(j),
        representative_of(modified.representation, modified.assignments, data, j));
  const double h = entropy_allow_zero(modified.sizes, data.size(), base);
  if (h == 0.0)
    throw degenerate_error("representivity_estimate: modified clustering has zero entropy");
  return hull.eval(distortion, segment) / h;
}

double purging_threshold(double delta_h, double kappa) {
  if (!(kappa < 0.0))
    throw std::invalid_argument("purging_threshold: slope must be negative");
  if (delta_h < 0.0)
    throw std::invalid_argument("purging_threshold: entropy delta must be nonnegative");
  return delta_h / -kappa;
}

namespace {

struct HullDetection {
  RateDistortionHull hull;
  std::vector<std::size_t> dropped;  // input ids off the hull, plus the leftmost vertex
  std::vector<std::size_t> skipped;  // hull segments with kappa >= 0
  std::vector<std::size_t> usable;   // hull segments that detection tests
};

// Shared preamble of parameter_free and definition_oracle: hull construction,
// dropping off-hull clusterings and the leftmost vertex, and skipping
// increasing segments.
HullDetection prepare_hull(const Dataset& data, std::span<const Clustering> clusterings,
                           const DetectOptions& options) {
  if (clusterings.size() < 2)
    throw std::invalid_argument("detection needs at least two clusterings");
  for (const Clustering& c : clusterings)
    if (c.size() != data.size())
      throw std::invalid_argument("detection: clustering and dataset sizes differ");

  std::vector<RdPoint> points;
  points.reserve(clusterings.size());
  for (std::size_t id = 0; id < clusterings.size(); ++id)
    points.push_back({total_distortion(data, clusterings[id], options.measure),
                      entropy(clusterings[id], options.log_base), id});

  RateDistortionHull hull = build_hull(std::move(points));

  std::vector<bool> on_hull(clusterings.size(), false);
  for (const RdPoint& v : hull.vertices()) on_hull[v.clustering_id] = true;
  std::vector<std::size_t> dropped;
  for (std::size_t id = 0; id < clusterings.size(); ++id)
    if (!on_hull[id]) dropped.push_back(id);
  // The leftmost vertex has no segment to its left and cannot be tested.
  dropped.push_back(hull.vertices().front().clustering_id);
  std::sort(dropped.begin(), dropped.end());

  std::vector<std::size_t> skipped = hull.increasing_segments();
  std::vector<std::size_t> usable = hull.usable_segments();
  if (usable.empty())
    throw degenerate_error(
        "no usable hull segment remains after dropping the leftmost clustering; "
        "supply more clusterings or a different perturbation");
  return {std::move(hull), std::move(dropped), std::move(skipped), std::move(usable)};
}

TestedClustering thresholds_for_segment(const Dataset& data, const Clustering& clustering,
                                        std::size_t clustering_id, std::size_t segment,
                                        double kappa, LogBase base) {
  TestedClustering tested;
  tested.clustering_id = clustering_id;
  tested.segment = segment;
  tested.kappa = kappa;
  tested.thresholds.reserve(clustering.num_clusters());
  for (std::size_t g = 1; g <= clustering.num_clusters(); ++g)
    tested.thresholds.push_back(
        purging_threshold(entropy_delta(clustering.cluster_size(g), data.size(), base),
                          kappa));
  return tested;
}

}  // namespace

OutlierReport parameter_free(const Dataset& data, std::span<const Clustering> clusterings,
                             const DetectOptions& options) {
  HullDetection prep = prepare_hull(data, clusterings, options);

  OutlierReport report;
  report.is_outlier.assign(data.size(), true);
  for (std::size_t segment : prep.usable) {
    const std::size_t id = prep.hull.vertices()[segment - 1].clustering_id;
    const Clustering& clustering = clusterings[id];
    TestedClustering tested = thresholds_for_segment(data, clustering, id, segment,
                                                     prep.hull.slope(segment),
                                                     options.log_base);
    for (std::size_t j = 0; j < data.size(); ++j) {
      if (!report.is_outlier[j]) continue;
      const double d =
          point_distortion(options.measure, data.point(j), rep_of(clustering, data, j));
      if (d < tested.thresholds[clustering.cluster_of(j) - 1]) report.is_outlier[j] = false;
    }
    report.tested.push_back(std::move(tested));
  }
  report.dropped_clusterings = std::move(prep.dropped);
  report.skipped_segments = std::move(prep.skipped);
  report.hull = std::move(prep.hull);
  return report;
}

OutlierReport parametric(const Dataset& data, const Clustering& clustering,
                         double kappa_magnitude, const DetectOptions& options) {
  if (!(kappa_magnitude > 0.0) || !std::isfinite(kappa_magnitude))
    throw std::invalid_argument("parametric: kappa magnitude must be positive");
  if (clustering.size() != data.size())
    throw std::invalid_argument("parametric: clustering and dataset sizes differ");

  OutlierReport report;
  TestedClustering tested = thresholds_for_segment(data, clustering, 0, 0,
                                                   -kappa_magnitude, options.log_base);
  report.is_outlier.assign(data.size(), false);
  for (std::size_t j = 0; j < data.size(); ++j) {
    const double d =
        point_distortion(options.measure, data.point(j), rep_of(clustering, data, j));
    report.is_outlier[j] = d >= tested.thresholds[clustering.cluster_of(j) - 1];
  }
  report.tested.push_back(std::move(tested));
  return report;
}

OutlierReport definition_oracle(const Dataset& data, std::span<const Clustering> clusterings,
                                const DetectOptions& options) {
  HullDetection prep = prepare_hull(data, clusterings, options);

  OutlierReport report;
  report.is_outlier.assign(data.size(), true);
  for (std::size_t segment : prep.usable) {
    const std::size_t id = prep.hull.vertices()[segment - 1].clustering_id;
    const Clustering& clustering = clusterings[id];
    for (std::size_t j = 0; j < data.size(); ++j) {
      if (!report.is_outlier[j]) continue;
      const PurgedVariant variant = make_purged_variant(data, clustering, j, id);
      const double rho = representivity_estimate(data, variant, prep.hull, segment,
                                                 options.measure, options.log_base);
      // Relative slack absorbs float noise at structural ties such as purging
      // a singleton, where the exact ratio is 1.
      if (!(rho >= 1.0 - 1e-12)) report.is_outlier[j] = false;
    }
    // Thresholds are reported for diagnosis only; the decisions above came
    // from the recomputed representivity ratios.
    report.tested.push_back(thresholds_for_segment(data, clustering, id, segment,
                                                   prep.hull.slope(segment),
                                                   options.log_base));
  }
  report.dropped_clusterings = std::move(prep.dropped);
  report.skipped_segments = std::move(prep.skipped);
  report.hull = std::move(prep.hull);
  return report;
}

}  // namespace cpurge
