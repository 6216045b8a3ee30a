#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "clusterpurge/core.hpp"

namespace cpurge {

enum class ClusterPick { min_size, max_size };
enum class ObservationPick { min_distortion, max_distortion };

/// How to derive a minimally different clustering from a seed: pick a cluster
/// by size, then purge its least or most distorted observation.
struct PerturbationStrategy {
  ClusterPick cluster = ClusterPick::max_size;
  ObservationPick observation = ObservationPick::max_distortion;

  static PerturbationStrategy min_min() { return {ClusterPick::min_size, ObservationPick::min_distortion}; }
  static PerturbationStrategy min_max() { return {ClusterPick::min_size, ObservationPick::max_distortion}; }
  static PerturbationStrategy max_min() { return {ClusterPick::max_size, ObservationPick::min_distortion}; }
  static PerturbationStrategy max_max() { return {ClusterPick::max_size, ObservationPick::max_distortion}; }

  static std::vector<PerturbationStrategy> all();
};

PerturbationStrategy parse_strategy(const std::string& name);
std::string to_string(PerturbationStrategy strategy);

/// Reassigns one observation of the strategy-selected cluster to a new
/// cluster nu+1 represented by itself; the donor cluster's representative is
/// left untouched. Ties break towards the lowest cluster/observation index.
/// Candidate clusters whose purge would not change the (distortion, entropy)
/// pair are skipped in strategy order; if none changes the pair (e.g. all
/// clusters are singletons) a degenerate_error is thrown.
Clustering perturb(const Dataset& data, const Clustering& clustering,
                   PerturbationStrategy strategy, DistortionMeasure measure);

/// Clustering with each observation represented by its nearest neighbour
/// within its own cluster (ties towards the lowest index); singletons
/// represent themselves.
Clustering nn_representation(const Dataset& data, std::vector<std::size_t> assignments);

}  // namespace cpurge
