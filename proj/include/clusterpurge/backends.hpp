#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "clusterpurge/core.hpp"
#include "clusterpurge/purging.hpp"

namespace cpurge {

struct KMeansParams {
  std::size_t k = 2;
  std::size_t n_start = 1000;
  std::uint64_t seed = 0;
};

/// Lloyd's algorithm, best of n_start seeded random initializations by
/// within-cluster sum of squared euclidean distances. Each restart samples k
/// distinct observations as initial centroids; iteration stops at an
/// assignment fixpoint or after 300 rounds; empty clusters are reseeded with
/// the observation farthest from its current centroid. Clusters are
/// renumbered by first appearance, so identical seeds give identical output.
/// When objective_trace is non-null the per-iteration objective of every
/// restart is appended to it.
Clustering kmeans(const Dataset& data, const KMeansParams& params,
                  std::vector<double>* objective_trace = nullptr);

/// One merge of the complete-linkage dendrogram; a and b are the surviving
/// root labels of the merged clusters (a < b, the merged cluster keeps a).
struct HacMerge {
  std::size_t a = 0;
  std::size_t b = 0;
  double distance = 0.0;
};

struct HacDendrogram {
  std::vector<HacMerge> merges;  // n-1 entries
};

/// Complete-linkage agglomeration over euclidean distances; merge ties break
/// towards the lexicographically lowest root pair. Quadratic memory.
HacDendrogram hac_dendrogram(const Dataset& data);

/// Cut the dendrogram at k clusters (replays the first n-k merges) and attach
/// arithmetic-mean centroids.
Clustering hac_cut(const Dataset& data, const HacDendrogram& dendrogram, std::size_t k);

Clustering hac_complete(const Dataset& data, std::size_t k);

struct DbscanParams {
  double eps = 1.0;
  std::size_t min_pts = 5;
};

/// Per-observation neighbour lists sorted by distance, shared across dbscan
/// calls with different parameters (quadratic build, quadratic memory).
class NeighborIndex {
 public:
  explicit NeighborIndex(const Dataset& data);

  std::size_t size() const { return distances_.size(); }
  /// Indices of the other observations within eps of j (ascending distance).
  std::span<const std::size_t> within(std::size_t j, double eps) const;
  /// Distance from j to its k-th nearest other observation (k >= 1).
  double kth_distance(std::size_t j, std::size_t k) const;

 private:
  std::vector<std::vector<double>> distances_;     // sorted ascending
  std::vector<std::vector<std::size_t>> indices_;  // parallel to distances_
};

/// Standard density-based clustering. An observation is a core point when at
/// least min_pts observations (itself included) lie within eps. Core points
/// are grouped by eps-connectivity; border points join the cluster of their
/// lowest-index core neighbour; noise points become singleton clusters. The
/// result carries a nearest-neighbour representation.
Clustering dbscan(const Dataset& data, const DbscanParams& params);
Clustering dbscan(const Dataset& data, const DbscanParams& params,
                  const NeighborIndex& index);

/// Baseline detector: flags exactly the members of size-1 clusters.
OutlierReport vanilla_detect(const Clustering& clustering);

}  // namespace cpurge
