#include "ghkit/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "ghkit/error.hpp"

namespace ghkit {
namespace {

std::vector<std::string> default_labels(std::size_t n, std::vector<std::string> labels) {
  if (labels.empty()) {
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  }
  if (labels.size() != n) {
    throw Error(Errc::invalid_argument, "expected " + std::to_string(n) + " labels, got " +
                                            std::to_string(labels.size()));
  }
  return labels;
}

std::string pair_text(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

}  // namespace

FiniteMetricSpace::FiniteMetricSpace(std::size_t n, std::vector<double> dist,
                                     std::vector<std::string> labels)
    : n_(n), dist_(std::move(dist)), labels_(std::move(labels)) {}

FiniteMetricSpace FiniteMetricSpace::single_point(std::string label) {
  return FiniteMetricSpace(1, {0.0}, {std::move(label)});
}

FiniteMetricSpace FiniteMetricSpace::from_trusted(std::vector<double> row_major,
                                                  std::vector<std::string> labels) {
  const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(row_major.size()))));
  if (n == 0 || n * n != row_major.size()) {
    throw Error(Errc::non_square_matrix, "matrix with " + std::to_string(row_major.size()) +
                                             " entries is not a nonempty square");
  }
  labels = default_labels(n, std::move(labels));
  for (std::size_t i = 0; i < n; ++i) {
    if (row_major[i * n + i] != 0.0) {
      throw Error(Errc::nonzero_diagonal, "entry " + pair_text(i, i), {i});
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = row_major[i * n + j];
      if (!(d >= 0.0) || !std::isfinite(d)) {
        throw Error(Errc::negative_distance, "entry " + pair_text(i, j), {i, j});
      }
      if (d == 0.0) throw Error(Errc::zero_distance, "points " + pair_text(i, j) + " coincide", {i, j});
      if (d != row_major[j * n + i]) {
        throw Error(Errc::asymmetric_matrix, "entry " + pair_text(i, j), {i, j});
      }
    }
  }
  return FiniteMetricSpace(n, std::move(row_major), std::move(labels));
}

double FiniteMetricSpace::at(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) {
    throw Error(Errc::index_out_of_range, pair_text(i, j) + " with n = " + std::to_string(n_), {i, j});
  }
  return (*this)(i, j);
}

std::vector<std::vector<double>> FiniteMetricSpace::matrix() const {
  std::vector<std::vector<double>> m(n_);
  for (std::size_t i = 0; i < n_; ++i) m[i].assign(row(i).begin(), row(i).end());
  return m;
}

FiniteMetricSpace validate_metric(const std::vector<std::vector<double>>& matrix,
                                  std::vector<std::string> labels, double tolerance) {
  const std::size_t n = matrix.size();
  if (n == 0) throw Error(Errc::non_square_matrix, "empty matrix");
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i].size() != n) {
      throw Error(Errc::non_square_matrix,
                  "row " + std::to_string(i) + " has " + std::to_string(matrix[i].size()) + " entries");
    }
  }
  labels = default_labels(n, std::move(labels));

  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i][i] != 0.0) throw Error(Errc::nonzero_diagonal, "entry " + pair_text(i, i), {i});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (matrix[i][j] != matrix[j][i]) {
        throw Error(Errc::asymmetric_matrix, "entry " + pair_text(i, j), {i, j});
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double d = matrix[i][j];
      if (!std::isfinite(d) || d < 0.0) {
        throw Error(Errc::negative_distance, "entry " + pair_text(i, j), {i, j});
      }
      if (i != j && d == 0.0) {
        throw Error(Errc::zero_distance, "points " + pair_text(i, j) + " coincide", {i, j});
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (matrix[i][k] > matrix[i][j] + matrix[j][k] + tolerance) {
          throw Error(Errc::triangle_violation,
                      "d(" + std::to_string(i) + "," + std::to_string(k) + ") > d(" +
                          std::to_string(i) + "," + std::to_string(j) + ") + d(" +
                          std::to_string(j) + "," + std::to_string(k) + ")",
                      {i, j, k});
        }
      }
    }
  }

  std::vector<double> flat;
  flat.reserve(n * n);
  for (const auto& r : matrix) flat.insert(flat.end(), r.begin(), r.end());
  return FiniteMetricSpace(n, std::move(flat), std::move(labels));
}

bool approx_equal(const FiniteMetricSpace& a, const FiniteMetricSpace& b, double tolerance) {
  if (a.size() != b.size()) return false;
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t k = 0; k < da.size(); ++k) {
    if (std::abs(da[k] - db[k]) > tolerance) return false;
  }
  return true;
}

double diameter(const FiniteMetricSpace& x) {
  const auto d = x.data();
  return *std::max_element(d.begin(), d.end());
}

double eccentricity(const FiniteMetricSpace& x, std::size_t i) {
  if (i >= x.size()) {
    throw Error(Errc::index_out_of_range, "index " + std::to_string(i), {i});
  }
  const auto r = x.row(i);
  return *std::max_element(r.begin(), r.end());
}

double min_eccentricity(const FiniteMetricSpace& x) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i) best = std::min(best, eccentricity(x, i));
  return best;
}

double mesh_width(const FiniteMetricSpace& x) {
  double width = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (j != i) nearest = std::min(nearest, x(i, j));
    }
    if (std::isfinite(nearest)) width = std::max(width, nearest);
  }
  return width;
}

PointSubset::PointSubset(const FiniteMetricSpace& space, std::vector<std::size_t> indices)
    : space_(&space), indices_(std::move(indices)), sorted_(indices_) {
  if (indices_.empty()) throw Error(Errc::empty_subset, "point subset has no indices");
  std::sort(sorted_.begin(), sorted_.end());
  if (sorted_.back() >= space.size()) {
    throw Error(Errc::index_out_of_range,
                "index " + std::to_string(sorted_.back()) + " with n = " + std::to_string(space.size()),
                {sorted_.back()});
  }
  if (std::adjacent_find(sorted_.begin(), sorted_.end()) != sorted_.end()) {
    throw Error(Errc::invalid_argument, "point subset repeats an index");
  }
}

PointSubset PointSubset::all(const FiniteMetricSpace& space) {
  std::vector<std::size_t> idx(space.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return PointSubset(space, std::move(idx));
}

bool PointSubset::contains(std::size_t i) const noexcept {
  return std::binary_search(sorted_.begin(), sorted_.end(), i);
}

double point_set_distance(const FiniteMetricSpace& x, std::size_t i, const PointSubset& a) {
  if (&a.space() != &x) throw Error(Errc::spaces_differ, "subset belongs to another space");
  if (i >= x.size()) throw Error(Errc::index_out_of_range, "index " + std::to_string(i), {i});
  double best = std::numeric_limits<double>::infinity();
  for (const std::size_t k : a.indices()) best = std::min(best, x(i, k));
  return best;
}

double hausdorff_distance(const FiniteMetricSpace& x, const PointSubset& a, const PointSubset& b) {
  if (&a.space() != &x || &b.space() != &x) {
    throw Error(Errc::spaces_differ, "subsets must belong to the given space");
  }
  double d = 0.0;
  for (const std::size_t i : a.indices()) d = std::max(d, point_set_distance(x, i, b));
  for (const std::size_t j : b.indices()) d = std::max(d, point_set_distance(x, j, a));
  return d;
}

bool is_separated(const FiniteMetricSpace& x, const PointSubset& s, double b) {
  const auto idx = s.indices();
  for (std::size_t p = 0; p < idx.size(); ++p) {
    for (std::size_t q = p + 1; q < idx.size(); ++q) {
      if (x(idx[p], idx[q]) < b) return false;
    }
  }
  return true;
}

bool is_homogeneous(const FiniteMetricSpace& x, double b, std::size_t n) {
  if (n < 2) throw Error(Errc::invalid_argument, "homogeneity needs n >= 2");
  if (!(b > 0.0)) throw Error(Errc::invalid_argument, "homogeneity needs b > 0");
  if (n == 2) return b <= min_eccentricity(x);
  if (x.size() < n) return false;

  // Candidates in order of decreasing eccentricity: far-reaching points
  // close a b-separated set fastest.
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> ecc(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) ecc[i] = eccentricity(x, i);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t p, std::size_t q) { return ecc[p] > ecc[q]; });

  std::vector<std::size_t> chosen;
  std::function<bool(const std::vector<std::size_t>&)> extend =
      [&](const std::vector<std::size_t>& candidates) -> bool {
    if (chosen.size() == n) return true;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (chosen.size() + (candidates.size() - c) < n) return false;
      const std::size_t v = candidates[c];
      std::vector<std::size_t> next;
      for (std::size_t r = c + 1; r < candidates.size(); ++r) {
        if (x(v, candidates[r]) >= b) next.push_back(candidates[r]);
      }
      chosen.push_back(v);
      if (extend(next)) return true;
      chosen.pop_back();
    }
    return false;
  };

  for (std::size_t p = 0; p < x.size(); ++p) {
    std::vector<std::size_t> candidates;
    for (const std::size_t q : order) {
      if (q != p && x(p, q) >= b) candidates.push_back(q);
    }
    chosen.assign(1, p);
    if (!extend(candidates)) return false;
  }
  return true;
}

bool is_round(const FiniteMetricSpace& x, double tolerance) {
  if (x.size() < 2) return false;
  return min_eccentricity(x) >= diameter(x) - tolerance;
}

FiniteMetricSpace scale(const FiniteMetricSpace& x, double factor) {
  if (!(factor >= 0.0) || !std::isfinite(factor)) {
    throw Error(Errc::negative_scale, "scale factor must be finite and >= 0");
  }
  if (factor == 0.0) return FiniteMetricSpace::single_point(x.label(0));
  std::vector<double> d(x.data().begin(), x.data().end());
  for (double& v : d) v *= factor;
  return FiniteMetricSpace::from_trusted(std::move(d), x.labels());
}

FiniteMetricSpace subspace(const FiniteMetricSpace& x, const PointSubset& a) {
  if (&a.space() != &x) throw Error(Errc::spaces_differ, "subset belongs to another space");
  const auto idx = a.indices();
  const std::size_t m = idx.size();
  std::vector<double> d(m * m);
  std::vector<std::string> labels;
  labels.reserve(m);
  for (std::size_t p = 0; p < m; ++p) {
    labels.push_back(x.label(idx[p]));
    for (std::size_t q = 0; q < m; ++q) d[p * m + q] = x(idx[p], idx[q]);
  }
  return FiniteMetricSpace::from_trusted(std::move(d), std::move(labels));
}

}  // namespace ghkit
