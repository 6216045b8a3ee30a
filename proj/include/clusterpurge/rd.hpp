#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "clusterpurge/core.hpp"

namespace cpurge {

/// Logarithm used by all entropy-like quantities. The outlier decision is
/// invariant under the choice (slopes and entropy deltas scale by the same
/// factor), which is why natural log is simply the default.
enum class LogBase { natural, base2 };

/// Empirical entropy -sum (f/n) log (f/n) of a partition given its cluster
/// sizes. All sizes must be >= 1 and sum to n.
double entropy(std::span<const std::size_t> sizes, std::size_t n,
               LogBase base = LogBase::natural);
double entropy(const Clustering& clustering, LogBase base = LogBase::natural);

/// Entropy of a size multiset that may contain zeros (0 log 0 = 0). Needed
/// for purged states where a cluster was emptied.
double entropy_allow_zero(std::span<const std::size_t> sizes, std::size_t n,
                          LogBase base = LogBase::natural);

/// Entropy increase caused by moving one member of a size-f cluster into a
/// new singleton cluster: (f log f - (f-1) log (f-1)) / n. Zero for f = 1.
double entropy_delta(std::size_t f, std::size_t n, LogBase base = LogBase::natural);

/// Total representation inaccuracy sum_j d(x_j, rep_of(j)).
double total_distortion(const Dataset& data, const Clustering& clustering,
                        DistortionMeasure measure);

/// One clustering's (distortion, entropy) pair tagged with its position in
/// the input clustering list.
struct RdPoint {
  double distortion = 0.0;
  double entropy = 0.0;
  std::size_t clustering_id = 0;
};

/// Lower convex hull of a set of (distortion, entropy) pairs, interpolated
/// piecewise linearly. Vertices are sorted by strictly increasing distortion;
/// segment i in [2..s] connects vertex i-1 to vertex i and carries slope
/// kappa_i and vertical intercept delta_i = h_i - kappa_i * d_i. Segments
/// with kappa_i >= 0 exist but are unusable for purging decisions.
class RateDistortionHull {
 public:
  RateDistortionHull(std::vector<RdPoint> vertices, std::vector<double> slopes,
                     std::vector<double> intercepts);

  const std::vector<RdPoint>& vertices() const { return vertices_; }
  std::size_t vertex_count() const { return vertices_.size(); }

  /// kappa_i for segment i in [2..vertex_count()].
  double slope(std::size_t segment) const;
  /// delta_i for segment i in [2..vertex_count()].
  double intercept(std::size_t segment) const;

  /// Linear extension kappa_i * distortion + delta_i of segment i, evaluated
  /// even when the distortion lies left of the segment.
  double eval(double distortion, std::size_t segment) const;

  bool segment_usable(std::size_t segment) const { return slope(segment) < 0.0; }
  /// Segment indices i with kappa_i < 0, ascending.
  std::vector<std::size_t> usable_segments() const;
  /// Segment indices i with kappa_i >= 0, ascending.
  std::vector<std::size_t> increasing_segments() const;

 private:
  void check_segment(std::size_t segment) const;

  std::vector<RdPoint> vertices_;
  std::vector<double> slopes_;      // index i-2 holds kappa_i
  std::vector<double> intercepts_;  // index i-2 holds delta_i
};

/// Lower convex hull of the given points. Among points sharing a distortion
/// value only the lowest entropy survives; interior and collinear points are
/// dropped. Throws degenerate_error when fewer than two distinct distortion
/// values are present (the caller must perturb first).
RateDistortionHull build_hull(std::vector<RdPoint> points);

}  // namespace cpurge
