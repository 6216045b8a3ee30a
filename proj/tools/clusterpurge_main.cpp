// Command-line front end: clustering, purging-based outlier detection,
// evaluation and export of plottable hull data.
//
// Exit codes: 0 success, 2 usage or validation error, 3 degenerate math
// (hull with one distinct distortion value, impossible perturbation, no
// testable hull segment).

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "clusterpurge/backends.hpp"
#include "clusterpurge/eval.hpp"
#include "clusterpurge/io.hpp"
#include "clusterpurge/perturb.hpp"
#include "clusterpurge/purging.hpp"

namespace {

using nlohmann::json;
using namespace cpurge;

constexpr int kExitUsage = 2;
constexpr int kExitDegenerate = 3;

struct ClusterArgs {
  std::string dataset;
  std::string backend = "kmeans";
  std::string out;
  std::size_t k = 2;
  std::size_t n_start = 10;
  std::uint64_t seed = 0;
  double eps = 1.0;
  std::size_t min_pts = 5;
};

int cmd_cluster(const ClusterArgs& args) {
  const Dataset data = io::read_dataset_csv(args.dataset);
  Backend backend = parse_backend(args.backend);
  json params;
  Clustering clustering = [&] {
    switch (backend) {
      case Backend::kmeans: {
        if (args.k < 1) throw std::invalid_argument("--k must be >= 1");
        params = {{"k", args.k}, {"n_start", args.n_start}};
        return kmeans(data, {args.k, args.n_start, args.seed});
      }
      case Backend::hac: {
        if (args.k < 1) throw std::invalid_argument("--k must be >= 1");
        params = {{"k", args.k}};
        return hac_complete(data, args.k);
      }
      case Backend::dbscan: {
        params = {{"eps", args.eps}, {"min_pts", args.min_pts}};
        return dbscan(data, {args.eps, args.min_pts});
      }
    }
    throw std::invalid_argument("invalid backend");
  }();
  io::write_clustering_json(args.out, clustering, args.backend, params, args.seed);
  std::cout << "wrote " << args.out << " (" << clustering.num_clusters()
            << " clusters)\n";
  return 0;
}

struct PurgeArgs {
  std::string dataset;
  std::vector<std::string> clusterings;
  std::string strategy = "max-max";
  std::string measure = "euclidean";
  std::string out;
};

int cmd_purge(const PurgeArgs& args) {
  const Dataset data = io::read_dataset_csv(args.dataset);
  std::vector<Clustering> clusterings;
  for (const std::string& path : args.clusterings)
    clusterings.push_back(io::read_clustering_json(path).clustering);
  const DistortionMeasure measure = parse_measure(args.measure);
  if (clusterings.size() == 1)
    clusterings.push_back(
        perturb(data, clusterings.front(), parse_strategy(args.strategy), measure));
  const OutlierReport report = parameter_free(data, clusterings, {measure});
  io::write_report_json(args.out, report, "parameter_free", measure);
  std::cout << "wrote " << args.out << " (" << report.outlier_count()
            << " outliers)\n";
  return 0;
}

struct PurgeParametricArgs {
  std::string dataset;
  std::string clustering;
  double kappa = 1.0;
  std::string measure = "euclidean";
  std::string out;
};

int cmd_purge_parametric(const PurgeParametricArgs& args) {
  const Dataset data = io::read_dataset_csv(args.dataset);
  const Clustering clustering = io::read_clustering_json(args.clustering).clustering;
  const DistortionMeasure measure = parse_measure(args.measure);
  const OutlierReport report = parametric(data, clustering, args.kappa, {measure});
  io::write_report_json(args.out, report, "parametric", measure);
  std::cout << "wrote " << args.out << " (" << report.outlier_count()
            << " outliers)\n";
  return 0;
}

struct EvaluateArgs {
  std::string report;
  std::string labels;
  std::string out;
};

// Labels come from a CSV with a label column, or from a single 0/1 column.
std::vector<bool> load_labels(const std::string& path) {
  const Dataset data = io::read_dataset_csv(path);
  if (data.has_labels()) return data.labels();
  if (data.dim() == 1) {
    std::vector<bool> labels(data.size());
    for (std::size_t j = 0; j < data.size(); ++j) {
      const double v = data.point(j)[0];
      if (v != 0.0 && v != 1.0)
        throw std::invalid_argument(path + ": label values must be 0 or 1");
      labels[j] = v == 1.0;
    }
    return labels;
  }
  throw std::invalid_argument(path + ": no label column found");
}

int cmd_evaluate(const EvaluateArgs& args) {
  const json doc = json::parse(io::read_text(args.report));
  const std::vector<bool> predicted = io::report_mask_from_json(doc);
  const std::vector<bool> truth = load_labels(args.labels);
  if (predicted.size() != truth.size())
    throw std::invalid_argument("report and labels have different lengths");
  const ClasswiseF1 scores = classwise_f1(predicted, truth);
  std::cout << "outlier_f1=" << io::format_double(scores.outlier) << "\n"
            << "inlier_f1=" << io::format_double(scores.inlier) << "\n"
            << "combined_f1=" << io::format_double(scores.combined) << "\n";
  if (!args.out.empty()) {
    json out = {{"outlier_f1", scores.outlier},
                {"inlier_f1", scores.inlier},
                {"combined_f1", scores.combined}};
    io::write_text(args.out, out.dump(2) + "\n");
  }
  return 0;
}

struct GridSearchArgs {
  std::string dataset;
  std::string config;
  std::string out;
  std::size_t jobs = 0;
};

int cmd_gridsearch(const GridSearchArgs& args) {
  const Dataset data = io::read_dataset_csv(args.dataset);
  GridSearchConfig config = io::read_grid_config_json(args.config);
  if (args.jobs) config.jobs = args.jobs;
  const GridSearchResult result = grid_search(data, config);
  const std::string table = io::score_table_csv(result);
  if (!args.out.empty())
    io::write_text(args.out, table);
  else
    std::cout << table;
  const GridPointResult& best = result.best();
  std::cout << "best: backend=" << to_string(best.backend)
            << " detector=" << to_string(best.detector);
  if (best.k) std::cout << " k=" << *best.k;
  if (best.min_pts) std::cout << " min_pts=" << *best.min_pts;
  if (best.eps) std::cout << " eps=" << io::format_double(*best.eps);
  if (best.kappa) std::cout << " kappa=" << io::format_double(*best.kappa);
  std::cout << " outlier_f1=" << io::format_double(best.outlier_f1)
            << " combined_f1=" << io::format_double(best.combined_f1) << "\n";
  return 0;
}

struct HullArgs {
  std::string dataset;
  std::vector<std::string> clusterings;
  std::string measure = "euclidean";
  std::string out;
};

int cmd_hull(const HullArgs& args) {
  const Dataset data = io::read_dataset_csv(args.dataset);
  const DistortionMeasure measure = parse_measure(args.measure);
  std::vector<RdPoint> points;
  for (std::size_t id = 0; id < args.clusterings.size(); ++id) {
    const Clustering clustering = io::read_clustering_json(args.clusterings[id]).clustering;
    points.push_back(
        {total_distortion(data, clustering, measure), entropy(clustering), id});
  }
  const RateDistortionHull hull = build_hull(points);
  const std::string csv = io::hull_csv(points, hull);
  if (!args.out.empty())
    io::write_text(args.out, csv);
  else
    std::cout << csv;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clustering-agnostic outlier detection via rate-distortion hulls"};
  app.require_subcommand(1);

  ClusterArgs cluster_args;
  CLI::App* cluster = app.add_subcommand("cluster", "Cluster a dataset CSV");
  cluster->add_option("dataset", cluster_args.dataset, "dataset CSV")->required();
  cluster->add_option("--backend", cluster_args.backend, "kmeans|hac|dbscan")
      ->check(CLI::IsMember({"kmeans", "hac", "dbscan"}));
  cluster->add_option("--k", cluster_args.k, "cluster count (kmeans, hac)");
  cluster->add_option("--n-start", cluster_args.n_start, "kmeans restarts");
  cluster->add_option("--seed", cluster_args.seed, "random seed (default 0)");
  cluster->add_option("--eps", cluster_args.eps, "dbscan radius");
  cluster->add_option("--min-pts", cluster_args.min_pts, "dbscan density threshold");
  cluster->add_option("-o,--out", cluster_args.out, "output clustering JSON")->required();

  PurgeArgs purge_args;
  CLI::App* purge = app.add_subcommand(
      "purge", "Parameter-free detection from one or more clusterings");
  purge->add_option("dataset", purge_args.dataset, "dataset CSV")->required();
  purge->add_option("clusterings", purge_args.clusterings, "clustering JSON files")
      ->required();
  purge->add_option("--strategy", purge_args.strategy,
                    "perturbation used when only one clustering is given")
      ->check(CLI::IsMember({"min-min", "min-max", "max-min", "max-max"}));
  purge->add_option("--measure", purge_args.measure, "distortion measure")
      ->check(CLI::IsMember({"euclidean", "squared-euclidean", "manhattan"}));
  purge->add_option("-o,--out", purge_args.out, "output report JSON")->required();

  PurgeParametricArgs parametric_args;
  CLI::App* purge_parametric = app.add_subcommand(
      "purge-parametric", "Detection from one clustering and a slope magnitude");
  purge_parametric->add_option("dataset", parametric_args.dataset, "dataset CSV")
      ->required();
  purge_parametric
      ->add_option("clustering", parametric_args.clustering, "clustering JSON")
      ->required();
  purge_parametric
      ->add_option("--kappa", parametric_args.kappa, "hull slope magnitude (> 0)")
      ->required();
  purge_parametric->add_option("--measure", parametric_args.measure, "distortion measure")
      ->check(CLI::IsMember({"euclidean", "squared-euclidean", "manhattan"}));
  purge_parametric->add_option("-o,--out", parametric_args.out, "output report JSON")
      ->required();

  EvaluateArgs evaluate_args;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Class-wise F1 of a report");
  evaluate->add_option("report", evaluate_args.report, "report JSON")->required();
  evaluate->add_option("labels", evaluate_args.labels, "labels CSV")->required();
  evaluate->add_option("-o,--out", evaluate_args.out, "optional metrics JSON");

  GridSearchArgs grid_args;
  CLI::App* gridsearch =
      app.add_subcommand("gridsearch", "Sweep a parameter grid against labels");
  gridsearch->add_option("dataset", grid_args.dataset, "dataset CSV with label column")
      ->required();
  gridsearch->add_option("config", grid_args.config, "grid config JSON")->required();
  gridsearch->add_option("-o,--out", grid_args.out, "score table CSV");
  gridsearch->add_option("--jobs", grid_args.jobs,
                         "worker count (default: available parallelism)");

  HullArgs hull_args;
  CLI::App* hull = app.add_subcommand("hull", "Export the rate-distortion hull");
  hull->add_option("dataset", hull_args.dataset, "dataset CSV")->required();
  hull->add_option("clusterings", hull_args.clusterings, "clustering JSON files (>= 2)")
      ->required()
      ->expected(2, -1);
  hull->add_option("--measure", hull_args.measure, "distortion measure")
      ->check(CLI::IsMember({"euclidean", "squared-euclidean", "manhattan"}));
  hull->add_option("-o,--out", hull_args.out, "output CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (cluster->parsed()) return cmd_cluster(cluster_args);
    if (purge->parsed()) return cmd_purge(purge_args);
    if (purge_parametric->parsed()) return cmd_purge_parametric(parametric_args);
    if (evaluate->parsed()) return cmd_evaluate(evaluate_args);
    if (gridsearch->parsed()) return cmd_gridsearch(grid_args);
    if (hull->parsed()) return cmd_hull(hull_args);
  } catch (const degenerate_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
