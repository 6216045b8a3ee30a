#include "clusterpurge/backends.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "clusterpurge/perturb.hpp"
#include "clusterpurge/rng.hpp"

namespace cpurge {

namespace {

double sq_dist(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    acc += diff * diff;
  }
  return acc;
}

// Renumber raw cluster labels in place to 1..nu by first appearance; returns
// mapping[g] = raw label that became cluster g+1.
std::vector<std::size_t> renumber_by_first_appearance(std::vector<std::size_t>& labels) {
  const std::size_t cap =
      labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end());
  std::vector<std::size_t> lookup(cap + 1, 0);
  std::vector<std::size_t> mapping;
  std::size_t next = 0;
  for (std::size_t& label : labels) {
    if (lookup[label] == 0) {
      mapping.push_back(label);
      lookup[label] = ++next;
    }
    label = lookup[label];
  }
  return mapping;
}

CentroidRepresentation mean_centroids(const Dataset& data,
                                      const std::vector<std::size_t>& assignments,
                                      std::size_t nu) {
  CentroidRepresentation rep;
  rep.dim = data.dim();
  rep.values.assign(nu * data.dim(), 0.0);
  std::vector<std::size_t> counts(nu, 0);
  for (std::size_t j = 0; j < data.size(); ++j) {
    const auto x = data.point(j);
    double* c = rep.values.data() + (assignments[j] - 1) * data.dim();
    for (std::size_t i = 0; i < data.dim(); ++i) c[i] += x[i];
    ++counts[assignments[j] - 1];
  }
  for (std::size_t g = 0; g < nu; ++g)
    for (std::size_t i = 0; i < data.dim(); ++i)
      rep.values[g * data.dim() + i] /= static_cast<double>(counts[g]);
  return rep;
}

}  // namespace

Clustering kmeans(const Dataset& data, const KMeansParams& params,
                  std::vector<double>* objective_trace) {
  const std::size_t n = data.size();
  const std::size_t d = data.dim();
  const std::size_t k = params.k;
  if (k < 1 || k > n) throw std::invalid_argument("kmeans: k must be in [1, n]");
  if (params.n_start < 1) throw std::invalid_argument("kmeans: n_start must be >= 1");

  std::mt19937_64 rng(params.seed);
  std::vector<double> best_centroids;
  std::vector<std::size_t> best_assignments;
  double best_objective = std::numeric_limits<double>::infinity();

  std::vector<std::size_t> pool(n);
  std::vector<double> centroids(k * d);
  std::vector<std::size_t> assignments(n);
  std::vector<std::size_t> previous(n);
  std::vector<std::size_t> counts(k);

  for (std::size_t restart = 0; restart < params.n_start; ++restart) {
    // k distinct observations as initial centroids (partial Fisher-Yates).
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) {
      std::swap(pool[i], pool[i + bounded(rng, n - i)]);
      const auto x = data.point(pool[i]);
      std::copy(x.begin(), x.end(), centroids.begin() + i * d);
    }

    std::fill(previous.begin(), previous.end(), std::size_t{0});
    double objective = 0.0;
    for (int iter = 0; iter < 300; ++iter) {
      objective = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const auto x = data.point(j);
        std::size_t arg = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t g = 0; g < k; ++g) {
          const double dist = sq_dist(x, {centroids.data() + g * d, d});
          if (dist < best) {
            best = dist;
            arg = g;
          }
        }
        assignments[j] = arg + 1;
        objective += best;
      }
      if (objective_trace) objective_trace->push_back(objective);
      if (assignments == previous) break;
      previous = assignments;

      std::fill(centroids.begin(), centroids.end(), 0.0);
      std::fill(counts.begin(), counts.end(), std::size_t{0});
      for (std::size_t j = 0; j < n; ++j) {
        const auto x = data.point(j);
        double* c = centroids.data() + (assignments[j] - 1) * d;
        for (std::size_t i = 0; i < d; ++i) c[i] += x[i];
        ++counts[assignments[j] - 1];
      }
      for (std::size_t g = 0; g < k; ++g)
        if (counts[g] > 0)
          for (std::size_t i = 0; i < d; ++i)
            centroids[g * d + i] /= static_cast<double>(counts[g]);

      // Reseed each empty cluster with the observation farthest from its
      // current centroid (sole members are skipped so no cluster drains).
      for (std::size_t g = 0; g < k; ++g) {
        if (counts[g] > 0) continue;
        std::size_t farthest = n;
        double far_dist = -1.0;
        for (std::size_t j = 0; j < n; ++j) {
          if (counts[assignments[j] - 1] <= 1) continue;
          const double dist =
              sq_dist(data.point(j), {centroids.data() + (assignments[j] - 1) * d, d});
          if (dist > far_dist) {
            far_dist = dist;
            farthest = j;
          }
        }
        if (farthest == n) break;
        --counts[assignments[farthest] - 1];
        const auto x = data.point(farthest);
        std::copy(x.begin(), x.end(), centroids.begin() + g * d);
        assignments[farthest] = g + 1;
        counts[g] = 1;
        previous[farthest] = 0;  // force another assignment round
      }
    }

    if (objective < best_objective) {
      best_objective = objective;
      best_assignments = assignments;
      best_centroids = centroids;
    }
  }

  // Stable numbering by first appearance; centroid rows permuted to match.
  const std::vector<std::size_t> mapping = renumber_by_first_appearance(best_assignments);
  CentroidRepresentation rep;
  rep.dim = d;
  rep.values.resize(mapping.size() * d);
  for (std::size_t g = 0; g < mapping.size(); ++g)
    std::copy_n(best_centroids.begin() + (mapping[g] - 1) * d, d,
                rep.values.begin() + g * d);
  return Clustering(std::move(best_assignments), std::move(rep));
}

HacDendrogram hac_dendrogram(const Dataset& data) {
  const std::size_t n = data.size();
  HacDendrogram dendrogram;
  if (n == 1) return dendrogram;
  dendrogram.merges.reserve(n - 1);

  std::vector<double> dist(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = std::sqrt(sq_dist(data.point(i), data.point(j)));
      dist[i * n + j] = d;
      dist[j * n + i] = d;
    }

  std::vector<bool> alive(n, true);
  // nn[i]: nearest alive partner j > i under the current linkage distances.
  std::vector<std::size_t> nn(n, n);
  std::vector<double> nn_dist(n, std::numeric_limits<double>::infinity());
  auto refresh_row = [&](std::size_t i) {
    nn_dist[i] = std::numeric_limits<double>::infinity();
    nn[i] = n;
    for (std::size_t j = i + 1; j < n; ++j)
      if (alive[j] && dist[i * n + j] < nn_dist[i]) {
        nn_dist[i] = dist[i * n + j];
        nn[i] = j;
      }
  };
  for (std::size_t i = 0; i < n; ++i) refresh_row(i);

  for (std::size_t step = 0; step + 1 < n; ++step) {
    // Ascending row scan with strict < keeps merge ties on the
    // lexicographically lowest pair (refresh_row keeps the lowest j).
    std::size_t a = n;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
      if (alive[i] && nn[i] < n && nn_dist[i] < best) {
        best = nn_dist[i];
        a = i;
      }
    const std::size_t b = nn[a];
    dendrogram.merges.push_back({a, b, best});

    alive[b] = false;
    for (std::size_t other = 0; other < n; ++other) {
      if (!alive[other] || other == a) continue;
      const double merged = std::max(dist[a * n + other], dist[b * n + other]);
      dist[a * n + other] = merged;
      dist[other * n + a] = merged;
    }
    // Complete linkage never shrinks a distance, so only rows that pointed at
    // the merged pair can be stale.
    refresh_row(a);
    for (std::size_t i = 0; i < n; ++i)
      if (alive[i] && i != a && (nn[i] == a || nn[i] == b)) refresh_row(i);
  }
  return dendrogram;
}

Clustering hac_cut(const Dataset& data, const HacDendrogram& dendrogram, std::size_t k) {
  const std::size_t n = data.size();
  if (k < 1 || k > n) throw std::invalid_argument("hac_cut: k must be in [1, n]");

  // Union-find replay of the first n-k merges; merged clusters keep the
  // smaller root, matching the dendrogram labels.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t m = 0; m + k < n; ++m)
    parent[dendrogram.merges[m].b] = dendrogram.merges[m].a;

  std::vector<std::size_t> assignments(n);
  for (std::size_t j = 0; j < n; ++j) assignments[j] = find(j) + 1;
  const std::size_t nu = renumber_by_first_appearance(assignments).size();
  CentroidRepresentation rep = mean_centroids(data, assignments, nu);
  return Clustering(std::move(assignments), std::move(rep));
}

Clustering hac_complete(const Dataset& data, std::size_t k) {
  return hac_cut(data, hac_dendrogram(data), k);
}

NeighborIndex::NeighborIndex(const Dataset& data) {
  const std::size_t n = data.size();
  distances_.resize(n);
  indices_.resize(n);
  std::vector<std::pair<double, std::size_t>> row;
  for (std::size_t j = 0; j < n; ++j) {
    row.clear();
    row.reserve(n - 1);
    for (std::size_t o = 0; o < n; ++o)
      if (o != j) row.emplace_back(std::sqrt(sq_dist(data.point(j), data.point(o))), o);
    std::sort(row.begin(), row.end());
    distances_[j].reserve(row.size());
    indices_[j].reserve(row.size());
    for (const auto& [d, idx] : row) {
      distances_[j].push_back(d);
      indices_[j].push_back(idx);
    }
  }
}

std::span<const std::size_t> NeighborIndex::within(std::size_t j, double eps) const {
  const auto& d = distances_[j];
  const std::size_t count =
      static_cast<std::size_t>(std::upper_bound(d.begin(), d.end(), eps) - d.begin());
  return {indices_[j].data(), count};
}

double NeighborIndex::kth_distance(std::size_t j, std::size_t k) const {
  if (k < 1 || k > distances_[j].size())
    throw std::invalid_argument("NeighborIndex: k-NN rank out of range");
  return distances_[j][k - 1];
}

Clustering dbscan(const Dataset& data, const DbscanParams& params) {
  return dbscan(data, params, NeighborIndex(data));
}

Clustering dbscan(const Dataset& data, const DbscanParams& params,
                  const NeighborIndex& index) {
  if (!(params.eps > 0.0)) throw std::invalid_argument("dbscan: eps must be > 0");
  if (params.min_pts < 1) throw std::invalid_argument("dbscan: min_pts must be >= 1");
  const std::size_t n = data.size();
  if (index.size() != n)
    throw std::invalid_argument("dbscan: neighbour index built for a different dataset");

  // Core points count themselves as neighbours.
  std::vector<bool> core(n, false);
  for (std::size_t j = 0; j < n; ++j)
    core[j] = index.within(j, params.eps).size() + 1 >= params.min_pts;

  // Connected components of the core-core eps graph, then border points join
  // their lowest-index core neighbour and noise becomes singleton clusters.
  // Classification is therefore independent of the input order.
  std::vector<std::size_t> label(n, 0);
  std::size_t next = 0;
  std::vector<std::size_t> queue;
  for (std::size_t seed = 0; seed < n; ++seed) {
    if (!core[seed] || label[seed] != 0) continue;
    label[seed] = ++next;
    queue.assign(1, seed);
    while (!queue.empty()) {
      const std::size_t p = queue.back();
      queue.pop_back();
      for (std::size_t q : index.within(p, params.eps)) {
        if (!core[q] || label[q] != 0) continue;
        label[q] = label[seed];
        queue.push_back(q);
      }
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (core[j]) continue;
    std::size_t best_core = n;
    for (std::size_t q : index.within(j, params.eps))
      if (core[q] && q < best_core) best_core = q;
    label[j] = best_core < n ? label[best_core] : ++next;
  }

  renumber_by_first_appearance(label);
  return nn_representation(data, std::move(label));
}

OutlierReport vanilla_detect(const Clustering& clustering) {
  OutlierReport report;
  report.is_outlier.resize(clustering.size());
  for (std::size_t j = 0; j < clustering.size(); ++j)
    report.is_outlier[j] = clustering.cluster_size(clustering.cluster_of(j)) == 1;
  return report;
}

}  // namespace cpurge
