#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "clusterpurge/backends.hpp"
#include "clusterpurge/eval.hpp"
#include "clusterpurge/io.hpp"
#include "clusterpurge/perturb.hpp"
#include "clusterpurge/purging.hpp"
#include "clusterpurge/rd.hpp"

namespace py = pybind11;
using namespace cpurge;

namespace {

Dataset make_dataset(py::array_t<double, py::array::c_style | py::array::forcecast> points,
                     std::optional<std::vector<bool>> labels) {
  if (points.ndim() != 2)
    throw std::invalid_argument("points must be a 2-D array (n x d)");
  const auto n = static_cast<std::size_t>(points.shape(0));
  const auto d = static_cast<std::size_t>(points.shape(1));
  std::vector<double> values(points.data(), points.data() + n * d);
  return Dataset(d, std::move(values), std::move(labels));
}

Clustering make_clustering(std::vector<std::size_t> assignments, py::object representation) {
  if (py::isinstance<py::array>(representation) || py::isinstance<py::list>(representation)) {
    auto arr = py::array_t<double, py::array::c_style | py::array::forcecast>::ensure(
        representation);
    if (arr && arr.ndim() == 2) {
      CentroidRepresentation rep;
      rep.dim = static_cast<std::size_t>(arr.shape(1));
      rep.values.assign(arr.data(), arr.data() + arr.shape(0) * arr.shape(1));
      return Clustering(std::move(assignments), std::move(rep));
    }
  }
  NearestNeighborRepresentation rep;
  rep.representative = representation.cast<std::vector<std::size_t>>();
  return Clustering(std::move(assignments), std::move(rep));
}

DetectOptions make_options(const std::string& measure) {
  return DetectOptions{parse_measure(measure), LogBase::natural};
}

py::object report_dict(const OutlierReport& report, const std::string& algorithm,
                       const std::string& measure) {
  const nlohmann::json doc =
      io::report_to_json(report, algorithm, parse_measure(measure));
  py::module json = py::module::import("json");
  return json.attr("loads")(doc.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Clustering-agnostic outlier detection via rate-distortion hulls";

  py::register_exception<degenerate_error>(m, "DegenerateError", PyExc_ArithmeticError);

  py::class_<Dataset>(m, "Dataset")
      .def(py::init(&make_dataset), py::arg("points"), py::arg("labels") = py::none(),
           "n x d array of observations with optional 0/1 outlier labels")
      .def_property_readonly("n", &Dataset::size)
      .def_property_readonly("dim", &Dataset::dim)
      .def_property_readonly("labels",
                             [](const Dataset& d) -> py::object {
                               if (!d.has_labels()) return py::none();
                               return py::cast(d.labels());
                             })
      .def("__len__", &Dataset::size);

  py::class_<Clustering>(m, "Clustering")
      .def(py::init(&make_clustering), py::arg("assignments"), py::arg("representation"),
           "assignments are 1-based cluster ids; representation is either a\n"
           "nu x d centroid array or a list of representative observation indices")
      .def_property_readonly("assignments",
                             [](const Clustering& c) { return c.assignments(); })
      .def_property_readonly("sizes", [](const Clustering& c) { return c.sizes(); })
      .def_property_readonly("num_clusters", &Clustering::num_clusters)
      .def_property_readonly("centroid_based", &Clustering::centroid_based)
      .def("__len__", &Clustering::size);

  py::class_<OutlierReport>(m, "OutlierReport")
      .def_property_readonly("is_outlier",
                             [](const OutlierReport& r) { return r.is_outlier; })
      .def_property_readonly("outliers", &OutlierReport::outliers)
      .def_property_readonly("outlier_count", &OutlierReport::outlier_count)
      .def("to_dict",
           [](const OutlierReport& r) { return report_dict(r, "report", "euclidean"); })
      .def("__len__", [](const OutlierReport& r) { return r.is_outlier.size(); });

  m.def("entropy",
        [](std::vector<std::size_t> sizes, std::size_t n) {
          return entropy(std::span<const std::size_t>(sizes), n);
        },
        py::arg("sizes"), py::arg("n"),
        "Empirical entropy of a partition given its cluster sizes (natural log)");
  m.def("entropy_delta",
        [](std::size_t f, std::size_t n) { return entropy_delta(f, n); }, py::arg("f"),
        py::arg("n"),
        "Entropy increase from purging one member of a size-f cluster");
  m.def("total_distortion",
        [](const Dataset& data, const Clustering& clustering, const std::string& measure) {
          return total_distortion(data, clustering, parse_measure(measure));
        },
        py::arg("dataset"), py::arg("clustering"), py::arg("measure") = "euclidean");

  m.def("kmeans",
        [](const Dataset& data, std::size_t k, std::size_t n_start, std::uint64_t seed) {
          return kmeans(data, {k, n_start, seed});
        },
        py::arg("dataset"), py::arg("k"), py::arg("n_start") = 10, py::arg("seed") = 0);
  m.def("hac_complete",
        [](const Dataset& data, std::size_t k) { return hac_complete(data, k); },
        py::arg("dataset"), py::arg("k"));
  m.def("dbscan",
        [](const Dataset& data, double eps, std::size_t min_pts) {
          return dbscan(data, {eps, min_pts});
        },
        py::arg("dataset"), py::arg("eps"), py::arg("min_pts"));
  m.def("nn_representation",
        [](const Dataset& data, std::vector<std::size_t> assignments) {
          return nn_representation(data, std::move(assignments));
        },
        py::arg("dataset"), py::arg("assignments"));
  m.def("perturb",
        [](const Dataset& data, const Clustering& clustering, const std::string& strategy,
           const std::string& measure) {
          return perturb(data, clustering, parse_strategy(strategy),
                         parse_measure(measure));
        },
        py::arg("dataset"), py::arg("clustering"), py::arg("strategy") = "max-max",
        py::arg("measure") = "euclidean");

  m.def("parameter_free",
        [](const Dataset& data, const std::vector<Clustering>& clusterings,
           const std::string& measure) {
          return parameter_free(data, clusterings, make_options(measure));
        },
        py::arg("dataset"), py::arg("clusterings"), py::arg("measure") = "euclidean",
        "Parameter-free detection over two or more clusterings");
  m.def("parametric",
        [](const Dataset& data, const Clustering& clustering, double kappa,
           const std::string& measure) {
          return parametric(data, clustering, kappa, make_options(measure));
        },
        py::arg("dataset"), py::arg("clustering"), py::arg("kappa"),
        py::arg("measure") = "euclidean",
        "Single-clustering detection with the hull slope magnitude as parameter");
  m.def("definition_oracle",
        [](const Dataset& data, const std::vector<Clustering>& clusterings,
           const std::string& measure) {
          return definition_oracle(data, clusterings, make_options(measure));
        },
        py::arg("dataset"), py::arg("clusterings"), py::arg("measure") = "euclidean",
        "Brute-force detection path; slow, for cross-checking parameter_free");
  m.def("vanilla_detect", &vanilla_detect, py::arg("clustering"),
        "Flag exactly the members of size-1 clusters");

  m.def("f1", &f1, py::arg("predicted"), py::arg("truth"));
  m.def("classwise_f1",
        [](const std::vector<bool>& predicted, const std::vector<bool>& truth) {
          const ClasswiseF1 s = classwise_f1(predicted, truth);
          return py::make_tuple(s.outlier, s.inlier, s.combined);
        },
        py::arg("predicted"), py::arg("truth"),
        "(outlier_f1, inlier_f1, combined) with combined the mean of the two");

  m.def("grid_search",
        [](const Dataset& data, const std::string& config_json) {
          const GridSearchConfig config =
              io::grid_config_from_json(nlohmann::json::parse(config_json));
          const GridSearchResult result = grid_search(data, config);
          py::module json = py::module::import("json");
          py::list rows;
          for (const GridPointResult& row : result.table) {
            py::dict d;
            d["backend"] = to_string(row.backend);
            d["detector"] = to_string(row.detector);
            if (row.k) d["k"] = *row.k;
            if (row.min_pts) d["min_pts"] = *row.min_pts;
            if (row.eps) d["eps"] = *row.eps;
            if (row.kappa) d["kappa"] = *row.kappa;
            d["outlier_f1"] = row.outlier_f1;
            d["inlier_f1"] = row.inlier_f1;
            d["combined_f1"] = row.combined_f1;
            d["error"] = row.error;
            rows.append(std::move(d));
          }
          return py::make_tuple(rows, result.best_index);
        },
        py::arg("dataset"), py::arg("config_json"),
        "Run a grid search from a JSON config string; returns (rows, best_index)");

#ifdef VERSION_INFO
#define CP_STR_IMPL(x) #x
#define CP_STR(x) CP_STR_IMPL(x)
  m.attr("__version__") = CP_STR(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
