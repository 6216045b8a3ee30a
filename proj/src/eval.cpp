#include "clusterpurge/eval.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>
#include <utility>

#include "clusterpurge/rng.hpp"

namespace cpurge {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                   start)
      .count();
}

}  // namespace

double f1(const std::vector<bool>& predicted, const std::vector<bool>& truth) {
  if (predicted.size() != truth.size())
    throw std::invalid_argument("f1: predicted and truth lengths differ");
  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t j = 0; j < predicted.size(); ++j) {
    if (predicted[j] && truth[j]) ++tp;
    else if (predicted[j]) ++fp;
    else if (truth[j]) ++fn;
  }
  const std::size_t denom = 2 * tp + fp + fn;
  return denom == 0 ? 0.0 : 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
}

ClasswiseF1 classwise_f1(const std::vector<bool>& predicted, const std::vector<bool>& truth) {
  ClasswiseF1 scores;
  scores.outlier = f1(predicted, truth);
  std::vector<bool> pred_inlier(predicted.size());
  std::vector<bool> true_inlier(truth.size());
  for (std::size_t j = 0; j < predicted.size(); ++j) {
    pred_inlier[j] = !predicted[j];
    true_inlier[j] = !truth[j];
  }
  scores.inlier = f1(pred_inlier, true_inlier);
  scores.combined = (scores.outlier + scores.inlier) / 2.0;
  return scores;
}

Backend parse_backend(const std::string& name) {
  if (name == "kmeans") return Backend::kmeans;
  if (name == "hac") return Backend::hac;
  if (name == "dbscan") return Backend::dbscan;
  throw std::invalid_argument("unknown backend: " + name);
}

std::string to_string(Backend backend) {
  switch (backend) {
    case Backend::kmeans: return "kmeans";
    case Backend::hac: return "hac";
    case Backend::dbscan: return "dbscan";
  }
  throw std::invalid_argument("invalid backend");
}

Detector parse_detector(const std::string& name) {
  if (name == "vanilla") return Detector::vanilla;
  if (name == "cp") return Detector::cp;
  if (name == "cpp") return Detector::cpp;
  throw std::invalid_argument("unknown detector: " + name);
}

std::string to_string(Detector detector) {
  switch (detector) {
    case Detector::vanilla: return "vanilla";
    case Detector::cp: return "cp";
    case Detector::cpp: return "cpp";
  }
  throw std::invalid_argument("invalid detector");
}

namespace {

std::vector<double> kappa_grid(const GridSearchConfig& config, std::size_t n) {
  std::size_t steps;
  if (config.kappa_steps)
    steps = *config.kappa_steps;
  else if (config.paper_kappa_steps)
    steps = n;
  else
    steps = std::min<std::size_t>(n, 200);
  if (steps == 0) return {};
  std::vector<double> grid;
  grid.reserve(steps);
  if (steps == 1) {
    grid.push_back(config.kappa_min);
    return grid;
  }
  const double span = config.kappa_max - config.kappa_min;
  for (std::size_t i = 0; i < steps; ++i)
    grid.push_back(config.kappa_min +
                   span * static_cast<double>(i) / static_cast<double>(steps - 1));
  return grid;
}

// One clustering parametrization of the sweep; detector cpp expands it by the
// kappa grid afterwards.
struct ClusteringJob {
  std::optional<std::size_t> k;
  std::optional<std::size_t> min_pts;
  std::optional<double> eps;
};

struct SharedState {
  const Dataset& data;
  const GridSearchConfig& config;
  const std::vector<double>& kappas;
  const HacDendrogram* dendrogram = nullptr;
  const NeighborIndex* index = nullptr;
};

Clustering run_backend(const SharedState& shared, const ClusteringJob& job) {
  switch (shared.config.backend) {
    case Backend::kmeans:
      return kmeans(shared.data,
                    {*job.k, shared.config.n_start, shared.config.seed});
    case Backend::hac:
      return hac_cut(shared.data, *shared.dendrogram, *job.k);
    case Backend::dbscan:
      return dbscan(shared.data, {*job.eps, *job.min_pts}, *shared.index);
  }
  throw std::invalid_argument("invalid backend");
}

void score(GridPointResult& row, const std::vector<bool>& predicted,
           const std::vector<bool>& truth) {
  const ClasswiseF1 scores = classwise_f1(predicted, truth);
  row.outlier_f1 = scores.outlier;
  row.inlier_f1 = scores.inlier;
  row.combined_f1 = scores.combined;
}

// Evaluates one clustering job and appends its result rows (one for vanilla
// and cp, one per kappa for cpp) into the pre-assigned slots.
void evaluate_job(const SharedState& shared, const ClusteringJob& job,
                  GridPointResult* rows) {
  const GridSearchConfig& config = shared.config;
  const std::vector<bool>& truth = shared.data.labels();
  const std::size_t row_count =
      config.detector == Detector::cpp ? shared.kappas.size() : 1;
  for (std::size_t i = 0; i < row_count; ++i) {
    rows[i].backend = config.backend;
    rows[i].detector = config.detector;
    rows[i].k = job.k;
    rows[i].min_pts = job.min_pts;
    rows[i].eps = job.eps;
    if (config.detector == Detector::cpp) rows[i].kappa = shared.kappas[i];
  }

  const auto cluster_start = std::chrono::steady_clock::now();
  std::optional<Clustering> clustering;
  try {
    clustering = run_backend(shared, job);
  } catch (const std::exception& e) {
    const double ms = elapsed_ms(cluster_start);
    for (std::size_t i = 0; i < row_count; ++i) {
      rows[i].cluster_ms = ms;
      rows[i].error = std::string("clustering failed: ") + e.what();
    }
    return;
  }
  const double cluster_ms = elapsed_ms(cluster_start);
  for (std::size_t i = 0; i < row_count; ++i) rows[i].cluster_ms = cluster_ms;

  const DetectOptions options{config.measure, LogBase::natural};
  switch (config.detector) {
    case Detector::vanilla: {
      const auto start = std::chrono::steady_clock::now();
      try {
        const OutlierReport report = vanilla_detect(*clustering);
        rows[0].detect_ms = elapsed_ms(start);
        score(rows[0], report.is_outlier, truth);
      } catch (const std::exception& e) {
        rows[0].detect_ms = elapsed_ms(start);
        rows[0].error = e.what();
      }
      return;
    }
    case Detector::cp: {
      const auto start = std::chrono::steady_clock::now();
      try {
        std::vector<Clustering> pair;
        pair.reserve(2);
        pair.push_back(std::move(*clustering));
        pair.push_back(perturb(shared.data, pair.front(), config.strategy, config.measure));
        const OutlierReport report = parameter_free(shared.data, pair, options);
        rows[0].detect_ms = elapsed_ms(start);
        score(rows[0], report.is_outlier, truth);
      } catch (const std::exception& e) {
        rows[0].detect_ms = elapsed_ms(start);
        rows[0].error = e.what();
      }
      return;
    }
    case Detector::cpp: {
      for (std::size_t i = 0; i < row_count; ++i) {
        const auto start = std::chrono::steady_clock::now();
        try {
          const OutlierReport report =
              parametric(shared.data, *clustering, shared.kappas[i], options);
          rows[i].detect_ms = elapsed_ms(start);
          score(rows[i], report.is_outlier, truth);
        } catch (const std::exception& e) {
          rows[i].detect_ms = elapsed_ms(start);
          rows[i].error = e.what();
        }
      }
      return;
    }
  }
}

}  // namespace

GridSearchResult grid_search(const Dataset& data, const GridSearchConfig& config) {
  if (!data.has_labels())
    throw std::invalid_argument("grid_search: dataset labels are required");
  const std::size_t n = data.size();
  const std::size_t d = data.dim();

  std::optional<HacDendrogram> dendrogram;
  std::optional<NeighborIndex> index;
  std::vector<ClusteringJob> jobs;
  switch (config.backend) {
    case Backend::kmeans:
      for (std::size_t k : config.kmeans_k) jobs.push_back({k, {}, {}});
      break;
    case Backend::hac: {
      dendrogram = hac_dendrogram(data);
      if (config.hac_k.empty()) {
        for (std::size_t k = 1; k <= n; ++k) jobs.push_back({k, {}, {}});
      } else {
        for (std::size_t k : config.hac_k) jobs.push_back({k, {}, {}});
      }
      break;
    }
    case Backend::dbscan: {
      index.emplace(data);
      std::vector<std::size_t> min_pts_grid = config.dbscan_min_pts;
      if (min_pts_grid.empty())
        for (std::size_t m = d + 1; m <= d + 10; ++m) min_pts_grid.push_back(m);
      for (std::size_t min_pts : min_pts_grid) {
        if (!config.dbscan_eps.empty()) {
          for (double eps : config.dbscan_eps) jobs.push_back({{}, min_pts, eps});
          continue;
        }
        // Unique min_pts-NN distances of the dataset, ascending. Observations
        // with fewer than min_pts neighbours contribute nothing.
        std::vector<double> dists;
        dists.reserve(n);
        for (std::size_t j = 0; j < n; ++j)
          if (min_pts <= n - 1) dists.push_back(index->kth_distance(j, min_pts));
        std::sort(dists.begin(), dists.end());
        dists.erase(std::unique(dists.begin(), dists.end()), dists.end());
        for (double eps : dists)
          if (eps > 0.0) jobs.push_back({{}, min_pts, eps});
      }
      break;
    }
  }

  const std::vector<double> kappas = kappa_grid(config, n);
  const std::size_t rows_per_job = config.detector == Detector::cpp ? kappas.size() : 1;
  if (jobs.empty() || rows_per_job == 0)
    throw std::invalid_argument("grid_search: empty parameter grid");

  GridSearchResult result;
  result.table.resize(jobs.size() * rows_per_job);
  SharedState shared{data, config, kappas,
                     dendrogram ? &*dendrogram : nullptr,
                     index ? &*index : nullptr};

  std::size_t workers = config.jobs ? config.jobs : std::thread::hardware_concurrency();
  workers = std::max<std::size_t>(1, std::min(workers, jobs.size()));
  if (workers == 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i)
      evaluate_job(shared, jobs[i], result.table.data() + i * rows_per_job);
  } else {
    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = cursor.fetch_add(1); i < jobs.size();
             i = cursor.fetch_add(1))
          evaluate_job(shared, jobs[i], result.table.data() + i * rows_per_job);
      });
    for (std::thread& t : pool) t.join();
  }

  result.best_index = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < result.table.size(); ++i) {
    const GridPointResult& row = result.table[i];
    const double value =
        config.target == SearchTarget::outlier_f1 ? row.outlier_f1 : row.combined_f1;
    if (value > best) {
      best = value;
      result.best_index = i;
    }
  }
  return result;
}

std::vector<StrategyScore> case_study(const Dataset& data, const CaseStudyOptions& options) {
  if (!data.has_labels())
    throw std::invalid_argument("case_study: dataset labels are required");
  if (options.strategies.empty())
    throw std::invalid_argument("case_study: no strategies given");
  if (options.seeds.empty() || options.n_inits == 0)
    throw std::invalid_argument("case_study: no runs configured");

  std::vector<StrategyScore> scores;
  scores.reserve(options.strategies.size());
  for (PerturbationStrategy s : options.strategies) scores.push_back({s});

  const DetectOptions detect{options.measure, LogBase::natural};
  std::size_t runs = 0;
  for (std::uint64_t seed : options.seeds) {
    for (std::size_t init = 0; init < options.n_inits; ++init) {
      const std::uint64_t run_seed = splitmix64(seed ^ splitmix64(init));
      const Clustering clustering = kmeans(data, {options.k, 1, run_seed});
      ++runs;
      for (std::size_t s = 0; s < options.strategies.size(); ++s) {
        try {
          std::vector<Clustering> pair{
              clustering,
              perturb(data, clustering, options.strategies[s], options.measure)};
          const OutlierReport report = parameter_free(data, pair, detect);
          const ClasswiseF1 f = classwise_f1(report.is_outlier, data.labels());
          scores[s].outlier_f1 += f.outlier;
          scores[s].inlier_f1 += f.inlier;
          scores[s].combined_f1 += f.combined;
        } catch (const std::exception&) {
          ++scores[s].failures;  // failed runs keep score 0
        }
      }
    }
  }
  for (StrategyScore& s : scores) {
    s.outlier_f1 /= static_cast<double>(runs);
    s.inlier_f1 /= static_cast<double>(runs);
    s.combined_f1 /= static_cast<double>(runs);
  }
  return scores;
}

}  // namespace cpurge
