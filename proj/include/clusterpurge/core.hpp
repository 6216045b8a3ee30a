#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace cpurge {

/// Raised when the math degenerates rather than the input being malformed:
/// hulls with fewer than two distinct distortion values, perturbations that
/// cannot change the entropy-distortion pair, detections left without a
/// usable hull segment. CLI maps this to exit code 3.
class degenerate_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class DistortionMeasure { euclidean, squared_euclidean, manhattan };

DistortionMeasure parse_measure(const std::string& name);
std::string to_string(DistortionMeasure measure);

/// Per-observation distortion d(x, r). Nonnegative for all three measures
/// and zero iff x == r. Throws std::invalid_argument on dimension mismatch.
double point_distortion(DistortionMeasure measure, std::span<const double> x,
                        std::span<const double> r);

/// n observations in R^d stored row-major, with optional binary outlier
/// labels (1 = true outlier). All entries must be finite, n >= 1, d >= 1.
class Dataset {
 public:
  Dataset(std::size_t dim, std::vector<double> values,
          std::optional<std::vector<bool>> labels = std::nullopt);

  static Dataset from_rows(const std::vector<std::vector<double>>& rows,
                           std::optional<std::vector<bool>> labels = std::nullopt);

  std::size_t size() const { return n_; }
  std::size_t dim() const { return d_; }

  std::span<const double> point(std::size_t j) const {
    if (j >= n_) throw std::invalid_argument("Dataset: observation index out of range");
    return {values_.data() + j * d_, d_};
  }

  const std::vector<double>& values() const { return values_; }
  bool has_labels() const { return labels_.has_value(); }
  const std::vector<bool>& labels() const;
  /// Number of labeled outliers (0 when no labels are attached).
  std::size_t outlier_count() const;

 private:
  std::size_t n_;
  std::size_t d_;
  std::vector<double> values_;
  std::optional<std::vector<bool>> labels_;
};

/// One representative point per cluster, row-major nu x dim. Cluster ids are
/// 1-based throughout the in-memory model; row g-1 represents cluster g.
struct CentroidRepresentation {
  std::size_t dim = 0;
  std::vector<double> values;

  std::size_t clusters() const { return dim == 0 ? 0 : values.size() / dim; }
  std::span<const double> centroid(std::size_t cluster) const {
    return {values.data() + (cluster - 1) * dim, dim};
  }
};

/// Each observation is represented by another observation, stored as a
/// 0-based index. As built by nn_representation the representative of j is
/// its nearest same-cluster neighbour (itself for singletons); purging and
/// perturbation may later leave a representative pointing into another
/// cluster, which is deliberate (only the purged point's distortion term is
/// meant to change).
struct NearestNeighborRepresentation {
  std::vector<std::size_t> representative;
};

using Representation = std::variant<CentroidRepresentation, NearestNeighborRepresentation>;

/// Representative lookup shared by Clustering and purged-variant states:
/// centroid of the assigned cluster, or the stored neighbour observation.
std::span<const double> representative_of(const Representation& rep,
                                          const std::vector<std::size_t>& assignments,
                                          const Dataset& data, std::size_t j);

/// A non-fuzzy clustering: per-observation assignments to clusters 1..nu plus
/// a representation. Construction rejects empty clusters (their entropy term
/// would be undefined) and inconsistent representation shapes.
class Clustering {
 public:
  Clustering(std::vector<std::size_t> assignments, Representation representation);

  std::size_t size() const { return assignments_.size(); }
  std::size_t num_clusters() const { return sizes_.size(); }

  const std::vector<std::size_t>& assignments() const { return assignments_; }
  const std::vector<std::size_t>& sizes() const { return sizes_; }

  /// 1-based id of the cluster containing observation j (0-based).
  std::size_t cluster_of(std::size_t j) const {
    if (j >= assignments_.size())
      throw std::invalid_argument("Clustering: observation index out of range");
    return assignments_[j];
  }
  std::size_t cluster_size(std::size_t cluster) const {
    if (cluster == 0 || cluster > sizes_.size())
      throw std::invalid_argument("Clustering: cluster id out of range");
    return sizes_[cluster - 1];
  }

  const Representation& representation() const { return representation_; }
  bool centroid_based() const {
    return std::holds_alternative<CentroidRepresentation>(representation_);
  }

 private:
  std::vector<std::size_t> assignments_;
  Representation representation_;
  std::vector<std::size_t> sizes_;
};

/// Recount cluster sizes from an assignment vector (values 1..nu, no gaps).
std::vector<std::size_t> sizes_from_assignments(const std::vector<std::size_t>& assignments);

/// Representative of observation j under the given clustering: the centroid
/// of its cluster or the stored nearest-neighbour observation.
std::span<const double> rep_of(const Clustering& clustering, const Dataset& data,
                               std::size_t j);

}  // namespace cpurge
