#include "clusterpurge/perturb.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <utility>

namespace cpurge {

std::vector<PerturbationStrategy> PerturbationStrategy::all() {
  return {min_min(), min_max(), max_min(), max_max()};
}

PerturbationStrategy parse_strategy(const std::string& name) {
  if (name == "min-min") return PerturbationStrategy::min_min();
  if (name == "min-max") return PerturbationStrategy::min_max();
  if (name == "max-min") return PerturbationStrategy::max_min();
  if (name == "max-max") return PerturbationStrategy::max_max();
  throw std::invalid_argument("unknown perturbation strategy: " + name);
}

std::string to_string(PerturbationStrategy strategy) {
  std::string out = strategy.cluster == ClusterPick::min_size ? "min-" : "max-";
  out += strategy.observation == ObservationPick::min_distortion ? "min" : "max";
  return out;
}

Clustering perturb(const Dataset& data, const Clustering& clustering,
                   PerturbationStrategy strategy, DistortionMeasure measure) {
  if (clustering.size() != data.size())
    throw std::invalid_argument("perturb: clustering and dataset sizes differ");
  const std::size_t n = data.size();
  const std::size_t nu = clustering.num_clusters();

  // Candidate clusters in strategy order; ties towards the lowest id.
  std::vector<std::size_t> order(nu);
  std::iota(order.begin(), order.end(), std::size_t{1});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const std::size_t sa = clustering.cluster_size(a);
    const std::size_t sb = clustering.cluster_size(b);
    if (sa != sb)
      return strategy.cluster == ClusterPick::min_size ? sa < sb : sa > sb;
    return a < b;
  });

  std::vector<double> distortion(n);
  for (std::size_t j = 0; j < n; ++j)
    distortion[j] = point_distortion(measure, data.point(j), rep_of(clustering, data, j));

  for (std::size_t g : order) {
    std::size_t pick = n;
    double best = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (clustering.cluster_of(j) != g) continue;
      const bool better = strategy.observation == ObservationPick::min_distortion
                              ? distortion[j] < best
                              : distortion[j] > best;
      if (pick == n || better) {
        pick = j;
        best = distortion[j];
      }
    }
    // Purging must yield a different entropy-distortion pair: the entropy
    // moves whenever the donor cluster keeps a member, the distortion
    // whenever the purged observation contributed to it.
    if (clustering.cluster_size(g) < 2 && !(best > 0.0)) continue;

    std::vector<std::size_t> assignments = clustering.assignments();
    assignments[pick] = nu + 1;
    Representation rep = clustering.representation();
    if (auto* c = std::get_if<CentroidRepresentation>(&rep)) {
      const auto x = data.point(pick);
      c->values.insert(c->values.end(), x.begin(), x.end());
    } else {
      std::get<NearestNeighborRepresentation>(rep).representative[pick] = pick;
    }
    return Clustering(std::move(assignments), std::move(rep));
  }
  throw degenerate_error(
      "perturb: no purge changes the entropy-distortion pair (all clusters are "
      "perfectly represented singletons)");
}

Clustering nn_representation(const Dataset& data, std::vector<std::size_t> assignments) {
  if (assignments.size() != data.size())
    throw std::invalid_argument("nn_representation: assignments and dataset sizes differ");
  const std::size_t n = data.size();
  const std::vector<std::size_t> sizes = sizes_from_assignments(assignments);

  std::vector<std::vector<std::size_t>> members(sizes.size());
  for (std::size_t g = 0; g < sizes.size(); ++g) members[g].reserve(sizes[g]);
  for (std::size_t j = 0; j < n; ++j) members[assignments[j] - 1].push_back(j);

  NearestNeighborRepresentation rep;
  rep.representative.resize(n);
  for (const auto& cluster : members) {
    if (cluster.size() == 1) {
      rep.representative[cluster.front()] = cluster.front();
      continue;
    }
    for (std::size_t j : cluster) {
      std::size_t best = n;
      double best_dist = std::numeric_limits<double>::infinity();
      for (std::size_t other : cluster) {
        if (other == j) continue;
        const double d = point_distortion(DistortionMeasure::euclidean, data.point(j),
                                          data.point(other));
        if (d < best_dist) {
          best_dist = d;
          best = other;
        }
      }
      rep.representative[j] = best;
    }
  }
  return Clustering(std::move(assignments), std::move(rep));
}

}  // namespace cpurge
