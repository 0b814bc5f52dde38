#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include "ghkit/metric_space.hpp"

namespace ghkit {

struct IndexPair {
  std::size_t left;
  std::size_t right;
  auto operator<=>(const IndexPair&) const = default;
};

/// A relation between the index sets {0..left_size-1} and {0..right_size-1}
/// that is surjective on both sides. Pairs are kept sorted and unique.
class Correspondence {
 public:
  /// Throws InvalidCorrespondence unless `pairs` covers every index on both
  /// sides and stays in range.
  Correspondence(std::size_t left_size, std::size_t right_size, std::vector<IndexPair> pairs);

  static Correspondence full_product(std::size_t left_size, std::size_t right_size);
  static Correspondence identity(std::size_t n);

  std::size_t left_size() const noexcept { return left_size_; }
  std::size_t right_size() const noexcept { return right_size_; }
  std::span<const IndexPair> pairs() const noexcept { return pairs_; }
  std::size_t size() const noexcept { return pairs_.size(); }

  bool operator==(const Correspondence&) const = default;

 private:
  std::size_t left_size_;
  std::size_t right_size_;
  std::vector<IndexPair> pairs_;
};

bool is_correspondence(std::span<const IndexPair> pairs, std::size_t left_size, std::size_t right_size);

/// max | d_X(x1,x2) - d_Y(y1,y2) | over pairs of pairs of r. Throws
/// InvalidCorrespondence when r's sizes do not match the spaces.
double distortion(const FiniteMetricSpace& x, const FiniteMetricSpace& y, const Correspondence& r);

/// Graph of t -> angle 2 pi t / length from segment_space(length, m) to
/// circle_space(n), each t sent to its nearest circle grid point. Circle
/// points missed by the rounding are joined to their nearest preimage.
Correspondence wrap_once(double length, std::size_t m, std::size_t n);

/// Same construction for t -> angle 3t (three-fold wrap), 2pi/3 <= length <= 7pi/6.
Correspondence wrap_triple(double length, std::size_t m, std::size_t n);

/// A correspondence between two subsets of one ambient space, with the
/// subsets materialized as spaces in the order of their PointSubset.
struct SubsetCorrespondence {
  FiniteMetricSpace left;
  FiniteMetricSpace right;
  Correspondence relation;
};

/// Nearest-point pairs in both directions between `a` and `b`: every pair
/// lies within d_H(a, b) in the ambient metric, so the distortion is at most
/// 2 d_H(a, b).
SubsetCorrespondence nearest_point_correspondence(const FiniteMetricSpace& x, const PointSubset& a,
                                                  const PointSubset& b);

}  // namespace ghkit
