#include "clusterpurge/core.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace cpurge {

DistortionMeasure parse_measure(const std::string& name) {
  if (name == "euclidean") return DistortionMeasure::euclidean;
  if (name == "squared-euclidean" || name == "sqeuclidean")
    return DistortionMeasure::squared_euclidean;
  if (name == "manhattan") return DistortionMeasure::manhattan;
  throw std::invalid_argument("unknown distortion measure: " + name);
}

std::string to_string(DistortionMeasure measure) {
  switch (measure) {
    case DistortionMeasure::euclidean: return "euclidean";
    case DistortionMeasure::squared_euclidean: return "squared-euclidean";
    case DistortionMeasure::manhattan: return "manhattan";
  }
  throw std::invalid_argument("invalid distortion measure");
}

double point_distortion(DistortionMeasure measure, std::span<const double> x,
                        std::span<const double> r) {
  if (x.size() != r.size())
    throw std::invalid_argument("point_distortion: dimension mismatch");
  double acc = 0.0;
  switch (measure) {
    case DistortionMeasure::euclidean:
    case DistortionMeasure::squared_euclidean:
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double diff = x[i] - r[i];
        acc += diff * diff;
      }
      return measure == DistortionMeasure::euclidean ? std::sqrt(acc) : acc;
    case DistortionMeasure::manhattan:
      for (std::size_t i = 0; i < x.size(); ++i) acc += std::abs(x[i] - r[i]);
      return acc;
  }
  throw std::invalid_argument("invalid distortion measure");
}

Dataset::Dataset(std::size_t dim, std::vector<double> values,
                 std::optional<std::vector<bool>> labels)
    : d_(dim), values_(std::move(values)), labels_(std::move(labels)) {
  if (d_ == 0) throw std::invalid_argument("Dataset: dimensionality must be >= 1");
  if (values_.empty() || values_.size() % d_ != 0)
    throw std::invalid_argument("Dataset: values do not form n x d rows");
  n_ = values_.size() / d_;
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("Dataset: non-finite entry");
  if (labels_ && labels_->size() != n_)
    throw std::invalid_argument("Dataset: label vector length differs from n");
}

Dataset Dataset::from_rows(const std::vector<std::vector<double>>& rows,
                           std::optional<std::vector<bool>> labels) {
  if (rows.empty()) throw std::invalid_argument("Dataset: no observations");
  const std::size_t d = rows.front().size();
  std::vector<double> values;
  values.reserve(rows.size() * d);
  for (const auto& row : rows) {
    if (row.size() != d)
      throw std::invalid_argument("Dataset: rows have mixed dimensionality");
    values.insert(values.end(), row.begin(), row.end());
  }
  return Dataset(d, std::move(values), std::move(labels));
}

const std::vector<bool>& Dataset::labels() const {
  if (!labels_) throw std::invalid_argument("Dataset: no labels attached");
  return *labels_;
}

std::size_t Dataset::outlier_count() const {
  if (!labels_) return 0;
  return static_cast<std::size_t>(std::count(labels_->begin(), labels_->end(), true));
}

std::vector<std::size_t> sizes_from_assignments(const std::vector<std::size_t>& assignments) {
  if (assignments.empty()) throw std::invalid_argument("Clustering: empty assignments");
  std::size_t nu = 0;
  for (std::size_t c : assignments) {
    if (c == 0) throw std::invalid_argument("Clustering: cluster ids are 1-based");
    nu = std::max(nu, c);
  }
  std::vector<std::size_t> sizes(nu, 0);
  for (std::size_t c : assignments) ++sizes[c - 1];
  for (std::size_t g = 0; g < nu; ++g)
    if (sizes[g] == 0)
      throw std::invalid_argument("Clustering: cluster " + std::to_string(g + 1) +
                                  " is empty");
  return sizes;
}

Clustering::Clustering(std::vector<std::size_t> assignments, Representation representation)
    : assignments_(std::move(assignments)), representation_(std::move(representation)) {
  sizes_ = sizes_from_assignments(assignments_);
  const std::size_t n = assignments_.size();
  const std::size_t nu = sizes_.size();
  if (const auto* c = std::get_if<CentroidRepresentation>(&representation_)) {
    if (c->dim == 0 || c->values.size() != nu * c->dim)
      throw std::invalid_argument("Clustering: expected exactly one centroid per cluster");
  } else {
    const auto& nn = std::get<NearestNeighborRepresentation>(representation_);
    if (nn.representative.size() != n)
      throw std::invalid_argument("Clustering: one representative per observation required");
    for (std::size_t j = 0; j < n; ++j)
      if (nn.representative[j] >= n)
        throw std::invalid_argument("Clustering: representative index out of range");
  }
}

std::span<const double> representative_of(const Representation& rep,
                                          const std::vector<std::size_t>& assignments,
                                          const Dataset& data, std::size_t j) {
  if (j >= assignments.size())
    throw std::invalid_argument("representative_of: observation index out of range");
  if (const auto* c = std::get_if<CentroidRepresentation>(&rep)) {
    if (c->dim != data.dim())
      throw std::invalid_argument("representative_of: centroid dimensionality mismatch");
    return c->centroid(assignments[j]);
  }
  const auto& nn = std::get<NearestNeighborRepresentation>(rep);
  return data.point(nn.representative[j]);
}

std::span<const double> rep_of(const Clustering& clustering, const Dataset& data,
                               std::size_t j) {
  if (clustering.size() != data.size())
    throw std::invalid_argument("rep_of: clustering and dataset sizes differ");
  return representative_of(clustering.representation(), clustering.assignments(), data, j);
}

}  // namespace cpurge
