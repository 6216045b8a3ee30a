#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clusterpurge/backends.hpp"
#include "clusterpurge/core.hpp"
#include "clusterpurge/perturb.hpp"

namespace cpurge {

/// F1 on the positive class; 0 when precision + recall is 0.
double f1(const std::vector<bool>& predicted, const std::vector<bool>& truth);

struct ClasswiseF1 {
  double outlier = 0.0;
  double inlier = 0.0;
  double combined = 0.0;  // arithmetic mean of the two class scores
};

ClasswiseF1 classwise_f1(const std::vector<bool>& predicted, const std::vector<bool>& truth);

enum class Backend { kmeans, hac, dbscan };
enum class Detector { vanilla, cp, cpp };

Backend parse_backend(const std::string& name);
std::string to_string(Backend backend);
Detector parse_detector(const std::string& name);
std::string to_string(Detector detector);

/// Which score grid_search maximizes.
enum class SearchTarget { outlier_f1, combined_f1 };

/// Parameter grids per backend and detector. Empty vectors mean the
/// data-derived default: HAC k = 1..n, DBSCAN min_pts = d+1..d+10 with eps
/// the unique min_pts-nearest-neighbour distances. The kappa grid for the
/// parametric detector is linearly spaced over [kappa_min, kappa_max] with
/// min(n, 200) steps unless kappa_steps overrides it (paper_kappa_steps
/// restores exactly n steps).
struct GridSearchConfig {
  Backend backend = Backend::kmeans;
  Detector detector = Detector::cp;
  DistortionMeasure measure = DistortionMeasure::euclidean;
  PerturbationStrategy strategy = PerturbationStrategy::max_max();
  SearchTarget target = SearchTarget::outlier_f1;

  std::vector<std::size_t> kmeans_k = {2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::size_t n_start = 1000;
  std::uint64_t seed = 0;

  std::vector<std::size_t> hac_k;          // empty -> 1..n
  std::vector<std::size_t> dbscan_min_pts; // empty -> d+1..d+10
  std::vector<double> dbscan_eps;          // empty -> unique k-NN distances

  double kappa_min = 0.1;
  double kappa_max = 10.0;
  std::optional<std::size_t> kappa_steps;
  bool paper_kappa_steps = false;

  std::size_t jobs = 0;  // 0 -> hardware concurrency
};

struct GridPointResult {
  Backend backend = Backend::kmeans;
  Detector detector = Detector::cp;
  std::optional<std::size_t> k;
  std::optional<std::size_t> min_pts;
  std::optional<double> eps;
  std::optional<double> kappa;
  double outlier_f1 = 0.0;
  double inlier_f1 = 0.0;
  double combined_f1 = 0.0;
  double cluster_ms = 0.0;
  double detect_ms = 0.0;
  std::string error;  // empty on success; failed points score 0

  bool ok() const { return error.empty(); }
};

struct GridSearchResult {
  std::vector<GridPointResult> table;
  std::size_t best_index = 0;

  const GridPointResult& best() const { return table.at(best_index); }
};

/// Evaluates every grid point against the dataset labels. The cp detector
/// builds its hull from the grid clustering plus one perturbation; cpp sweeps
/// the kappa grid per clustering. Failures are recorded per point with score
/// 0, never aborting the sweep. Ties on the target break towards the first
/// grid point in iteration order.
GridSearchResult grid_search(const Dataset& data, const GridSearchConfig& config);

struct CaseStudyOptions {
  std::size_t k = 225;
  std::size_t n_inits = 1000;
  std::vector<std::uint64_t> seeds = {0};
  std::vector<PerturbationStrategy> strategies = PerturbationStrategy::all();
  DistortionMeasure measure = DistortionMeasure::euclidean;
};

struct StrategyScore {
  PerturbationStrategy strategy;
  double outlier_f1 = 0.0;
  double inlier_f1 = 0.0;
  double combined_f1 = 0.0;
  std::size_t failures = 0;  // runs that scored 0 because detection errored
};

/// For every seed and initialization runs a single-start k-means, then the
/// parameter-free detector under each perturbation strategy, and reports
/// per-strategy mean class-wise F1 scores.
std::vector<StrategyScore> case_study(const Dataset& data, const CaseStudyOptions& options);

}  // namespace cpurge
