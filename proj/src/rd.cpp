#include "clusterpurge/rd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

namespace cpurge {

namespace {

double lg(double v, LogBase base) {
  return base == LogBase::natural ? std::log(v) : std::log2(v);
}

}  // namespace

double entropy(std::span<const std::size_t> sizes, std::size_t n, LogBase base) {
  if (sizes.empty()) throw std::invalid_argument("entropy: no cluster sizes");
  std::size_t total = 0;
  for (std::size_t f : sizes) {
    if (f == 0) throw std::invalid_argument("entropy: zero cluster size");
    total += f;
  }
  if (total != n) throw std::invalid_argument("entropy: sizes do not sum to n");
  return entropy_allow_zero(sizes, n, base);
}

double entropy_allow_zero(std::span<const std::size_t> sizes, std::size_t n, LogBase base) {
  double h = 0.0;
  const double dn = static_cast<double>(n);
  for (std::size_t f : sizes) {
    if (f == 0) continue;  // 0 log 0 = 0
    const double p = static_cast<double>(f) / dn;
    h -= p * lg(p, base);
  }
  return h;
}

double entropy(const Clustering& clustering, LogBase base) {
  return entropy(clustering.sizes(), clustering.size(), base);
}

double entropy_delta(std::size_t f, std::size_t n, LogBase base) {
  if (f < 1 || f > n)
    throw std::invalid_argument("entropy_delta: cluster size outside [1, n]");
  if (f == 1) return 0.0;
  const double df = static_cast<double>(f);
  return (df * lg(df, base) - (df - 1.0) * lg(df - 1.0, base)) / static_cast<double>(n);
}

double total_distortion(const Dataset& data, const Clustering& clustering,
                        DistortionMeasure measure) {
  if (clustering.size() != data.size())
    throw std::invalid_argument("total_distortion: clustering and dataset sizes differ");
  double total = 0.0;
  for (std::size_t j = 0; j < data.size(); ++j)
    total += point_distortion(measure, data.point(j), rep_of(clustering, data, j));
  return total;
}

RateDistortionHull::RateDistortionHull(std::vector<RdPoint> vertices,
                                       std::vector<double> slopes,
                                       std::vector<double> intercepts)
    : vertices_(std::move(vertices)),
      slopes_(std::move(slopes)),
      intercepts_(std::move(intercepts)) {
  if (vertices_.size() < 2 || slopes_.size() != vertices_.size() - 1 ||
      intercepts_.size() != slopes_.size())
    throw std::invalid_argument("RateDistortionHull: inconsistent vertex/segment counts");
}

void RateDistortionHull::check_segment(std::size_t segment) const {
  if (segment < 2 || segment > vertices_.size())
    throw std::invalid_argument("RateDistortionHull: segment index " +
                                std::to_string(segment) + " outside [2, " +
                                std::to_string(vertices_.size()) + "]");
}

double RateDistortionHull::slope(std::size_t segment) const {
  check_segment(segment);
  return slopes_[segment - 2];
}

double RateDistortionHull::intercept(std::size_t segment) const {
  check_segment(segment);
  return intercepts_[segment - 2];
}

double RateDistortionHull::eval(double distortion, std::size_t segment) const {
  check_segment(segment);
  return slopes_[segment - 2] * distortion + intercepts_[segment - 2];
}

std::vector<std::size_t> RateDistortionHull::usable_segments() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 2; i <= vertices_.size(); ++i)
    if (slopes_[i - 2] < 0.0) out.push_back(i);
  return out;
}

std::vector<std::size_t> RateDistortionHull::increasing_segments() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 2; i <= vertices_.size(); ++i)
    if (slopes_[i - 2] >= 0.0) out.push_back(i);
  return out;
}

RateDistortionHull build_hull(std::vector<RdPoint> points) {
  std::sort(points.begin(), points.end(), [](const RdPoint& a, const RdPoint& b) {
    if (a.distortion != b.distortion) return a.distortion < b.distortion;
    if (a.entropy != b.entropy) return a.entropy < b.entropy;
    return a.clustering_id < b.clustering_id;
  });

  // Among points sharing a distortion value only the lowest entropy can lie
  // on the lower envelope.
  std::vector<RdPoint> distinct;
  for (const RdPoint& p : points)
    if (distinct.empty() || distinct.back().distortion != p.distortion)
      distinct.push_back(p);

  if (distinct.size() < 2)
    throw degenerate_error(
        "rate-distortion hull needs at least two distinct distortion values; "
        "perturb a clustering or supply more clusterings");

  // Monotone chain, lower envelope only. cross <= 0 drops clockwise turns and
  // collinear interior points.
  std::vector<RdPoint> hull;
  for (const RdPoint& p : distinct) {
    while (hull.size() >= 2) {
      const RdPoint& a = hull[hull.size() - 2];
      const RdPoint& b = hull[hull.size() - 1];
      const double cross = (b.distortion - a.distortion) * (p.entropy - a.entropy) -
                           (b.entropy - a.entropy) * (p.distortion - a.distortion);
      if (cross <= 0.0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(p);
  }

  std::vector<double> slopes;
  std::vector<double> intercepts;
  slopes.reserve(hull.size() - 1);
  intercepts.reserve(hull.size() - 1);
  for (std::size_t i = 1; i < hull.size(); ++i) {
    const double kappa = (hull[i].entropy - hull[i - 1].entropy) /
                         (hull[i].distortion - hull[i - 1].distortion);
    slopes.push_back(kappa);
    intercepts.push_back(hull[i].entropy - kappa * hull[i].distortion);
  }
  return RateDistortionHull(std::move(hull), std::move(slopes), std::move(intercepts));
}

}  // namespace cpurge
