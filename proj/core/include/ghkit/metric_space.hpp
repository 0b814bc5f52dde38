#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ghkit {

inline constexpr double kDefaultMetricTolerance = 1e-9;

/// A finite metric space: n labelled points and a dense symmetric distance
/// matrix. Immutable once built; every instance satisfies the metric axioms
/// (triangle inequality up to the tolerance it was validated with).
class FiniteMetricSpace {
 public:
  /// The one-point space.
  static FiniteMetricSpace single_point(std::string label = "p0");

  /// Builds a space from a row-major n*n matrix produced by a trusted
  /// constructor. Runs the O(n^2) entry checks but skips the triangle
  /// inequality. Use validate_metric() for external input.
  static FiniteMetricSpace from_trusted(std::vector<double> row_major,
                                        std::vector<std::string> labels);

  std::size_t size() const noexcept { return n_; }

  double operator()(std::size_t i, std::size_t j) const noexcept { return dist_[i * n_ + j]; }
  double at(std::size_t i, std::size_t j) const;

  std::span<const double> row(std::size_t i) const noexcept {
    return {dist_.data() + i * n_, n_};
  }
  std::span<const double> data() const noexcept { return dist_; }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

  std::vector<std::vector<double>> matrix() const;

 private:
  FiniteMetricSpace(std::size_t n, std::vector<double> dist, std::vector<std::string> labels);
  friend FiniteMetricSpace validate_metric(const std::vector<std::vector<double>>&,
                                           std::vector<std::string>, double);

  std::size_t n_;
  std::vector<double> dist_;
  std::vector<std::string> labels_;
};

/// Checks the four metric axioms and returns the space, or throws Error
/// naming the first violated axiom (AsymmetricMatrix, NonzeroDiagonal,
/// NegativeDistance, ZeroDistance, TriangleViolation with its (i,j,k)).
/// Empty labels are replaced by "p<i>".
FiniteMetricSpace validate_metric(const std::vector<std::vector<double>>& matrix,
                                  std::vector<std::string> labels = {},
                                  double tolerance = kDefaultMetricTolerance);

/// Matrix equality within `tolerance`; labels are ignored.
bool approx_equal(const FiniteMetricSpace& a, const FiniteMetricSpace& b,
                  double tolerance = kDefaultMetricTolerance);

double diameter(const FiniteMetricSpace& x);
double eccentricity(const FiniteMetricSpace& x, std::size_t i);
double min_eccentricity(const FiniteMetricSpace& x);

/// Largest nearest-neighbour distance: the grid step of a discretization.
/// Zero for a single point.
double mesh_width(const FiniteMetricSpace& x);

/// A nonempty set of distinct point indices of one space, kept in the order
/// given. The subset refers to the space by address and must not outlive it.
class PointSubset {
 public:
  PointSubset(const FiniteMetricSpace& space, std::vector<std::size_t> indices);
  static PointSubset all(const FiniteMetricSpace& space);

  const FiniteMetricSpace& space() const noexcept { return *space_; }
  std::span<const std::size_t> indices() const noexcept { return indices_; }
  std::size_t size() const noexcept { return indices_.size(); }
  bool contains(std::size_t i) const noexcept;

 private:
  const FiniteMetricSpace* space_;
  std::vector<std::size_t> indices_;
  std::vector<std::size_t> sorted_;
};

double point_set_distance(const FiniteMetricSpace& x, std::size_t i, const PointSubset& a);
double hausdorff_distance(const FiniteMetricSpace& x, const PointSubset& a, const PointSubset& b);

bool is_separated(const FiniteMetricSpace& x, const PointSubset& s, double b);

/// True iff every point lies in some b-separated n-point subset.
bool is_homogeneous(const FiniteMetricSpace& x, double b, std::size_t n);

/// Every point has a diametral partner. Spaces with fewer than two points
/// are not round.
bool is_round(const FiniteMetricSpace& x, double tolerance = kDefaultMetricTolerance);

/// All distances multiplied by `factor`; factor 0 yields the one-point space.
FiniteMetricSpace scale(const FiniteMetricSpace& x, double factor);

/// The metric restricted to `a`, points in the subset's order.
FiniteMetricSpace subspace(const FiniteMetricSpace& x, const PointSubset& a);

}  // namespace ghkit
