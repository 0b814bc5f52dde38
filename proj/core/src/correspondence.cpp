#include "ghkit/correspondence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ghkit/error.hpp"
#include "ghkit/model_spaces.hpp"
#include "ghkit/parallel.hpp"

namespace ghkit {

bool is_correspondence(std::span<const IndexPair> pairs, std::size_t left_size, std::size_t right_size) {
  if (pairs.empty() || left_size == 0 || right_size == 0) return false;
  std::vector<bool> left(left_size, false);
  std::vector<bool> right(right_size, false);
  for (const auto& p : pairs) {
    if (p.left >= left_size || p.right >= right_size) return false;
    left[p.left] = true;
    right[p.right] = true;
  }
  return std::all_of(left.begin(), left.end(), [](bool b) { return b; }) &&
         std::all_of(right.begin(), right.end(), [](bool b) { return b; });
}

Correspondence::Correspondence(std::size_t left_size, std::size_t right_size,
                               std::vector<IndexPair> pairs)
    : left_size_(left_size), right_size_(right_size), pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
  if (!is_correspondence(pairs_, left_size_, right_size_)) {
    throw Error(Errc::invalid_correspondence,
                "relation of " + std::to_string(pairs_.size()) + " pairs is not surjective on " +
                    std::to_string(left_size_) + " x " + std::to_string(right_size_));
  }
}

Correspondence Correspondence::full_product(std::size_t left_size, std::size_t right_size) {
  std::vector<IndexPair> pairs;
  pairs.reserve(left_size * right_size);
  for (std::size_t i = 0; i < left_size; ++i) {
    for (std::size_t j = 0; j < right_size; ++j) pairs.push_back({i, j});
  }
  return Correspondence(left_size, right_size, std::move(pairs));
}

Correspondence Correspondence::identity(std::size_t n) {
  std::vector<IndexPair> pairs;
  pairs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pairs.push_back({i, i});
  return Correspondence(n, n, std::move(pairs));
}

double distortion(const FiniteMetricSpace& x, const FiniteMetricSpace& y, const Correspondence& r) {
  if (r.left_size() != x.size() || r.right_size() != y.size()) {
    throw Error(Errc::invalid_correspondence, "correspondence sizes do not match the spaces");
  }
  const auto pairs = r.pairs();
  return parallel_max(pairs.size(), 0.0, [&](std::size_t k) {
    const auto rx = x.row(pairs[k].left);
    const auto ry = y.row(pairs[k].right);
    double m = 0.0;
    for (std::size_t l = k + 1; l < pairs.size(); ++l) {
      m = std::max(m, std::abs(rx[pairs[l].left] - ry[pairs[l].right]));
    }
    return m;
  });
}

namespace {

/// Shared body of wrap_once / wrap_triple: sample t on the grid, map to the
/// angle `speed * t`, round to the circle grid, then repair coverage.
Correspondence wrap_graph(double length, double speed, std::size_t m, std::size_t n) {
  if (m < 2) throw Error(Errc::grid_too_coarse, "segment grid needs at least two points");
  if (n < 3) throw Error(Errc::too_few_points, "circle grid needs n >= 3");
  const double circle_step = 2.0 * kPi / static_cast<double>(n);
  const double sample_step = speed * length / static_cast<double>(m - 1);
  if (sample_step > 2.0 * circle_step) {
    throw Error(Errc::grid_too_coarse,
                "segment grid of " + std::to_string(m) + " points cannot cover a circle grid of " +
                    std::to_string(n));
  }

  std::vector<double> angle(m);
  std::vector<IndexPair> pairs;
  pairs.reserve(m + n);
  std::vector<bool> covered(n, false);
  for (std::size_t k = 0; k < m; ++k) {
    angle[k] = speed * segment_coordinate(length, m, k);
    const auto slot = static_cast<std::size_t>(std::llround(angle[k] / circle_step)) % n;
    pairs.push_back({k, slot});
    covered[slot] = true;
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (covered[j]) continue;
    const double target = circle_step * static_cast<double>(j);
    std::size_t best = 0;
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < m; ++k) {
      const double raw = std::fmod(std::abs(angle[k] - target), 2.0 * kPi);
      const double gap = std::min(raw, 2.0 * kPi - raw);
      if (gap < best_gap) {
        best_gap = gap;
        best = k;
      }
    }
    pairs.push_back({best, j});
  }
  return Correspondence(m, n, std::move(pairs));
}

}  // namespace

Correspondence wrap_once(double length, std::size_t m, std::size_t n) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw Error(Errc::invalid_argument, "wrap_once needs a positive length");
  }
  return wrap_graph(length, 2.0 * kPi / length, m, n);
}

Correspondence wrap_triple(double length, std::size_t m, std::size_t n) {
  constexpr double kSlack = 1e-12;
  if (!(length >= 2.0 * kPi / 3.0 - kSlack && length <= 7.0 * kPi / 6.0 + kSlack)) {
    throw Error(Errc::lambda_out_of_range, "wrap_triple needs 2pi/3 <= length <= 7pi/6");
  }
  return wrap_graph(length, 3.0, m, n);
}

SubsetCorrespondence nearest_point_correspondence(const FiniteMetricSpace& x, const PointSubset& a,
                                                  const PointSubset& b) {
  if (&a.space() != &x || &b.space() != &x) {
    throw Error(Errc::spaces_differ, "subsets must belong to the given space");
  }
  const auto ia = a.indices();
  const auto ib = b.indices();
  std::vector<IndexPair> pairs;
  pairs.reserve(ia.size() + ib.size());
  for (std::size_t p = 0; p < ia.size(); ++p) {
    std::size_t best = 0;
    for (std::size_t q = 1; q < ib.size(); ++q) {
      if (x(ia[p], ib[q]) < x(ia[p], ib[best])) best = q;
    }
    pairs.push_back({p, best});
  }
  for (std::size_t q = 0; q < ib.size(); ++q) {
    std::size_t best = 0;
    for (std::size_t p = 1; p < ia.size(); ++p) {
      if (x(ia[p], ib[q]) < x(ia[best], ib[q])) best = p;
    }
    pairs.push_back({best, q});
  }
  return SubsetCorrespondence{subspace(x, a), subspace(x, b),
                              Correspondence(ia.size(), ib.size(), std::move(pairs))};
}

}  // namespace ghkit
