#pragma once

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <optional>
#include <span>
#include <vector>

#include "ghkit/correspondence.hpp"
#include "ghkit/metric_space.hpp"

namespace ghkit {

struct SearchOptions {
  std::size_t max_points = 7;
  std::size_t node_budget = 50'000'000;
  /// Known upper bound on the optimal distortion (not on d_GH); only used
  /// for pruning.
  std::optional<double> initial_upper;
};

enum class SearchStatus { optimal, upper };

struct ExactResult {
  double value = 0.0;  // half the distortion of `relation`
  Correspondence relation;
  SearchStatus status = SearchStatus::optimal;
  std::size_t nodes = 0;
};

/// d_GH(X, Y) by branch and bound over correspondences. Rows are assigned
/// nonempty subsets of Y, most eccentric rows first, pruning on the partial
/// distortion and on the cheapest completion of every open row and column.
/// Among optimal correspondences the lexicographically smallest pair list
/// is returned. When the node budget runs out the best relation found so
/// far is returned with status `upper`. Throws TooLarge above max_points.
ExactResult gh_exact(const FiniteMetricSpace& x, const FiniteMetricSpace& y, const SearchOptions& opts = {});

/// Every correspondence between index sets of sizes nx and ny, each once, in
/// increasing order of the bit mask over the nx*ny grid (bit i*ny + j is the
/// pair (i, j)). Requires nx*ny <= 20.
class CorrespondenceRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = std::vector<IndexPair>;
    using difference_type = std::ptrdiff_t;
    using pointer = const value_type*;
    using reference = const value_type&;

    iterator() = default;
    reference operator*() const { return pairs_; }
    pointer operator->() const { return &pairs_; }
    iterator& operator++() {
      advance();
      return *this;
    }
    void operator++(int) { advance(); }
    bool operator==(const iterator& o) const { return mask_ == o.mask_; }
    std::uint32_t mask() const { return mask_; }

   private:
    friend class CorrespondenceRange;
    iterator(const CorrespondenceRange* range, std::uint32_t mask);
    void advance();
    void settle();

    const CorrespondenceRange* range_ = nullptr;
    std::uint32_t mask_ = 0;
    std::vector<IndexPair> pairs_;
  };

  CorrespondenceRange(std::size_t nx, std::size_t ny);
  iterator begin() const;
  iterator end() const;

  std::size_t left_size() const noexcept { return nx_; }
  std::size_t right_size() const noexcept { return ny_; }
  bool is_valid(std::uint32_t mask) const noexcept;

 private:
  std::size_t nx_;
  std::size_t ny_;
  std::uint32_t end_mask_;
  std::uint32_t row_mask_;
};

inline CorrespondenceRange enumerate_correspondences(std::size_t nx, std::size_t ny) {
  return CorrespondenceRange(nx, ny);
}

std::size_t count_correspondences(std::size_t nx, std::size_t ny);

/// Smallest distortion over all correspondences (exhaustive, nx*ny <= 20).
double exhaustive_min_distortion(const FiniteMetricSpace& x, const FiniteMetricSpace& y);

/// distortion(pairs)/2 == value, pairs form a correspondence, and (when
/// |X||Y| <= 20) no correspondence does better.
bool verify_optimum(const FiniteMetricSpace& x, const FiniteMetricSpace& y, double value,
                    std::span<const IndexPair> pairs);

}  // namespace ghkit
