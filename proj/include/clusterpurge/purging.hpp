#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "clusterpurge/core.hpp"
#include "clusterpurge/rd.hpp"

namespace cpurge {

/// A clustering after one observation was reassigned to a new singleton
/// cluster nu+1 that represents it perfectly. Kept as raw pieces instead of a
/// Clustering because purging the sole member of a cluster leaves that
/// cluster empty, which a Clustering rejects. Only the purged observation's
/// distortion term changes: d(x, r') = d(x, r) - d(x_j, rep_of(j)).
struct PurgedVariant {
  std::size_t base_clustering = 0;  // position of the seed in the input list
  std::size_t purged = 0;           // observation j (0-based)
  std::vector<std::size_t> assignments;
  Representation representation;
  std::vector<std::size_t> sizes;   // may contain one zero entry
};

PurgedVariant make_purged_variant(const Dataset& data, const Clustering& clustering,
                                  std::size_t j, std::size_t base_clustering = 0);

/// Hull entropy at the variant's recomputed distortion divided by the
/// variant's recomputed entropy, using segment i's linear extension. Values
/// >= 1 mean the modification does not exceed the hull's complexity. Throws
/// degenerate_error when the variant's entropy is zero.
double representivity_estimate(const Dataset& data, const PurgedVariant& modified,
                               const RateDistortionHull& hull, std::size_t segment,
                               DistortionMeasure measure,
                               LogBase base = LogBase::natural);

/// Purging boundary radius delta_h / (-kappa) in distortion units. Requires
/// kappa < 0 (increasing segments must be skipped by the caller).
double purging_threshold(double delta_h, double kappa);

/// One hull clustering that detection actually tests: its position in the
/// input list, the hull segment it terminates (0 for the parametric
/// algorithm, which has no hull), the slope in use and the per-cluster
/// purging boundaries.
struct TestedClustering {
  std::size_t clustering_id = 0;
  std::size_t segment = 0;
  double kappa = 0.0;
  std::vector<double> thresholds;  // index g-1 holds cluster g's boundary
};

struct OutlierReport {
  std::vector<bool> is_outlier;
  std::vector<TestedClustering> tested;
  std::optional<RateDistortionHull> hull;
  std::vector<std::size_t> dropped_clusterings;  // off-hull inputs + the leftmost vertex
  std::vector<std::size_t> skipped_segments;     // hull segments with kappa >= 0

  std::vector<std::size_t> outliers() const;
  std::size_t outlier_count() const;
};

struct DetectOptions {
  DistortionMeasure measure = DistortionMeasure::euclidean;
  LogBase log_base = LogBase::natural;
};

/// Parameter-free detection over >= 2 clusterings: builds the rate-distortion
/// hull, drops off-hull clusterings and the leftmost vertex (which has no
/// segment to its left), and flags observations whose distortion reaches the
/// purging boundary in every tested clustering with a decreasing segment.
OutlierReport parameter_free(const Dataset& data, std::span<const Clustering> clusterings,
                             const DetectOptions& options = {});

/// Single-clustering detection with the hull slope magnitude supplied as a
/// parameter: flags x_j iff d(x_j, rep_of(j)) >= delta_h / kappa_magnitude.
OutlierReport parametric(const Dataset& data, const Clustering& clustering,
                         double kappa_magnitude, const DetectOptions& options = {});

/// Brute-force detection path: materializes every purged variant, recomputes
/// its entropy and distortion from scratch and tests the representivity ratio
/// directly. Slow by design; exists as the independent check of
/// parameter_free, with a 1e-12 relative slack on the >= 1 comparison to
/// absorb float noise at structural ties (e.g. purging a singleton).
OutlierReport definition_oracle(const Dataset& data, std::span<const Clustering> clusterings,
                                const DetectOptions& options = {});

}  // namespace cpurge
