#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "clusterpurge/backends.hpp"
#include "clusterpurge/core.hpp"
#include "clusterpurge/rd.hpp"
#include "clusterpurge/rng.hpp"

namespace cpurge::testing {

// 1-D toys used across the suites. toy4 = [0, 0.1, 0.2, 10] with clusterings
// k1 (everything together) and k2 ({0,0.1,0.2} | {10}); toy6 =
// [0, 0.1, 0.2, 0.3, 0.4, 100] with P ({first five} | {100}) and
// Q ({0,0.1} | {0.2,0.3,0.4} | {100}).
inline Dataset toy4() {
  return Dataset(1, {0.0, 0.1, 0.2, 10.0});
}

inline Clustering toy4_k1() {
  return Clustering({1, 1, 1, 1}, CentroidRepresentation{1, {2.575}});
}

inline Clustering toy4_k2() {
  return Clustering({1, 1, 1, 2}, CentroidRepresentation{1, {0.1, 10.0}});
}

inline Dataset toy6(bool with_labels = false) {
  std::optional<std::vector<bool>> labels;
  if (with_labels) labels = std::vector<bool>{false, false, false, false, false, true};
  return Dataset(1, {0.0, 0.1, 0.2, 0.3, 0.4, 100.0}, std::move(labels));
}

inline Clustering toy6_p() {
  return Clustering({1, 1, 1, 1, 1, 2}, CentroidRepresentation{1, {0.2, 100.0}});
}

inline Clustering toy6_q() {
  return Clustering({1, 1, 2, 2, 2, 3}, CentroidRepresentation{1, {0.05, 0.3, 100.0}});
}

// Frozen oracle values, evaluated by hand from the formulas at full
// precision (mpmath, 30 digits).
inline constexpr double kEntropy21 = 0.6365141682948128;    // sizes [2,1], n=3
inline constexpr double kEntropy31 = 0.5623351446188084;    // sizes [3,1], n=4
inline constexpr double kEntropyQ = 1.0114042647073517;     // sizes [2,3,1], n=6
inline constexpr double kEntropyP = 0.45056120886630464;    // sizes [5,1], n=6
inline constexpr double kEntropy411 = 0.8675632284814613;   // sizes [4,1,1], n=6
inline constexpr double kDelta24 = 0.34657359027997264;     // f=2, n=4
inline constexpr double kDelta56 = 0.41700201961515657;     // f=5, n=6
inline constexpr double kKappaToy4 = -0.03838465150981627;
inline constexpr double kHullEvalToy4 = 0.2850060374603858;  // segment 2 at D=7.425
inline constexpr double kRhoToy4 = 0.506825938566553;        // purge x=10 from k1
inline constexpr double kKappaToy6 = -1.8694768528034901;
inline constexpr double kThresholdToy6 = 0.2230581346807345;  // size-5 cluster

// Mixture of gaussian blobs with a fraction of uniform noise over an
// enclosing box; noise rows are labeled outliers.
inline Dataset make_blobs(std::size_t n, std::size_t dim, std::size_t blobs,
                          double noise_fraction, std::uint64_t seed,
                          double blob_sigma = 0.5, double box = 20.0) {
  std::mt19937_64 rng(seed);
  auto gauss = [&rng](double sigma) {
    // Box-Muller keeps the stream independent of libstdc++ internals.
    const double u1 = std::max(uniform01(rng), 1e-300);
    const double u2 = uniform01(rng);
    return sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  };

  std::vector<std::vector<double>> centers(blobs, std::vector<double>(dim));
  for (auto& c : centers)
    for (double& v : c) v = (uniform01(rng) - 0.5) * box;

  const std::size_t noise = static_cast<std::size_t>(std::round(noise_fraction * n));
  std::vector<double> values;
  values.reserve(n * dim);
  std::vector<bool> labels(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    if (j < n - noise) {
      const auto& c = centers[bounded(rng, blobs)];
      for (std::size_t i = 0; i < dim; ++i) values.push_back(c[i] + gauss(blob_sigma));
    } else {
      labels[j] = true;
      for (std::size_t i = 0; i < dim; ++i)
        values.push_back((uniform01(rng) - 0.5) * 2.0 * box);
    }
  }
  return Dataset(dim, std::move(values), std::move(labels));
}

// Small random instance for the oracle-equivalence and invariance harnesses:
// blobs plus noise, clustered by single-start k-means at varied k. Clustering
// count and shapes vary per call.
struct RandomInstance {
  Dataset data;
  std::vector<Clustering> clusterings;
};

inline RandomInstance random_instance(std::mt19937_64& rng) {
  const std::size_t n = 6 + bounded(rng, 45);        // 6..50
  const std::size_t d = 1 + bounded(rng, 3);         // 1..3
  const std::size_t blobs = 1 + bounded(rng, 3);     // 1..3
  const double noise = 0.05 + 0.15 * uniform01(rng); // keep a few stragglers
  Dataset data = make_blobs(n, d, blobs, noise, rng(), 0.3 + uniform01(rng), 10.0);

  const std::size_t count = 2 + bounded(rng, 3);  // 2..4 clusterings
  std::vector<Clustering> clusterings;
  clusterings.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t k = 1 + bounded(rng, std::min<std::size_t>(6, n));
    clusterings.push_back(kmeans(data, {k, 1, rng()}));
  }
  return {std::move(data), std::move(clusterings)};
}

// O(t^2) gift-wrapping lower hull, independent of the monotone chain in
// build_hull. Points must already be distinct in distortion.
inline std::vector<RdPoint> giftwrap_lower_hull(std::vector<RdPoint> points) {
  std::sort(points.begin(), points.end(), [](const RdPoint& a, const RdPoint& b) {
    return a.distortion < b.distortion;
  });
  std::vector<RdPoint> hull;
  std::size_t current = 0;
  hull.push_back(points[0]);
  while (current + 1 < points.size()) {
    // Next vertex: minimum slope from the current one; ties resolve to the
    // farthest point, which drops collinear interior points.
    std::size_t best = current + 1;
    double best_slope = (points[best].entropy - points[current].entropy) /
                        (points[best].distortion - points[current].distortion);
    for (std::size_t j = current + 2; j < points.size(); ++j) {
      const double slope = (points[j].entropy - points[current].entropy) /
                           (points[j].distortion - points[current].distortion);
      if (slope < best_slope || (slope == best_slope &&
                                 points[j].distortion > points[best].distortion)) {
        best_slope = slope;
        best = j;
      }
    }
    hull.push_back(points[best]);
    current = best;
  }
  return hull;
}

}  // namespace cpurge::testing
