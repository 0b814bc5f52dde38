#include "ghkit/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ghkit/error.hpp"

namespace ghkit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kEnumerationLimit = 20;

struct BudgetExhausted {};

class BranchAndBound {
 public:
  BranchAndBound(const FiniteMetricSpace& x, const FiniteMetricSpace& y, std::size_t budget)
      : x_(x), y_(y), nx_(x.size()), ny_(y.size()), full_(static_cast<std::uint32_t>((1u << ny_) - 1)),
        budget_(budget), subset_diam_(std::size_t{1} << ny_, 0.0) {
    for (std::uint32_t s = 1; s <= full_; ++s) {
      double d = 0.0;
      for (std::size_t a = 0; a < ny_; ++a) {
        if (!(s >> a & 1u)) continue;
        for (std::size_t b = a + 1; b < ny_; ++b) {
          if (s >> b & 1u) d = std::max(d, y_(a, b));
        }
      }
      subset_diam_[s] = d;
    }
  }

  std::size_t nodes() const noexcept { return nodes_; }

  /// Smallest distortion (strictly below `bound`, or at most `bound` when
  /// `inclusive`), with its row assignment. False if none exists.
  bool minimize(double bound, bool inclusive, double& best, std::vector<std::uint32_t>& rows) {
    order_.resize(nx_);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::vector<double> ecc(nx_);
    for (std::size_t i = 0; i < nx_; ++i) ecc[i] = eccentricity(x_, i);
    std::stable_sort(order_.begin(), order_.end(), [&](auto a, auto b) { return ecc[a] > ecc[b]; });

    bound_ = bound;
    inclusive_ = inclusive;
    found_ = false;
    lex_mode_ = false;
    assign_.assign(nx_, 0);
    std::vector<double> cost(nx_ * ny_, 0.0);
    search(0, cost, 0.0, 0);
    if (found_) {
      best = bound_;
      rows = best_rows_;
    }
    return found_;
  }

  /// Lexicographically smallest assignment with distortion <= limit.
  bool smallest_at(double limit, std::vector<std::uint32_t>& rows) {
    order_.resize(nx_);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    bound_ = limit;
    inclusive_ = true;
    found_ = false;
    lex_mode_ = true;
    lex_middle_ = lex_order(false);
    lex_last_ = lex_order(true);
    assign_.assign(nx_, 0);
    std::vector<double> cost(nx_ * ny_, 0.0);
    search(0, cost, 0.0, 0);
    if (found_) rows = best_rows_;
    return found_;
  }

 private:
  bool pruned(double v) const { return inclusive_ ? v > bound_ : v >= bound_; }

  /// Subsets of Y ordered as the sorted pair lists they produce. A proper
  /// prefix sorts after its extensions unless it is the last row, where the
  /// list simply ends.
  std::vector<std::uint32_t> lex_order(bool last_row) const {
    std::vector<std::uint32_t> out;
    auto rec = [&](auto&& self, std::size_t start, std::uint32_t prefix) -> void {
      for (std::size_t a = start; a < ny_; ++a) {
        const std::uint32_t s = prefix | (1u << a);
        if (last_row) out.push_back(s);
        self(self, a + 1, s);
        if (!last_row) out.push_back(s);
      }
    };
    rec(rec, 0, 0u);
    return out;
  }

  void search(std::size_t level, const std::vector<double>& cost, double current, std::uint32_t covered) {
    if (++nodes_ > budget_) throw BudgetExhausted{};
    if (level == nx_) {
      if (covered != full_) return;
      found_ = true;
      best_rows_ = assign_;
      if (!lex_mode_) {
        bound_ = current;
        inclusive_ = false;
      }
      return;
    }

    // Every open row still needs one column and every uncovered column one row.
    double lb = current;
    for (std::size_t l = level; l < nx_; ++l) {
      const double* c = cost.data() + order_[l] * ny_;
      lb = std::max(lb, *std::min_element(c, c + ny_));
    }
    for (std::size_t b = 0; b < ny_; ++b) {
      if (covered >> b & 1u) continue;
      double m = kInf;
      for (std::size_t i = 0; i < nx_; ++i) m = std::min(m, cost[i * ny_ + b]);
      lb = std::max(lb, m);
    }
    if (pruned(lb)) return;

    const std::size_t row = order_[level];
    const double* c = cost.data() + row * ny_;

    std::vector<std::pair<double, std::uint32_t>> options;
    auto consider = [&](std::uint32_t s) {
      double v = std::max(current, subset_diam_[s]);
      for (std::size_t b = 0; b < ny_; ++b) {
        if (s >> b & 1u) v = std::max(v, c[b]);
      }
      if (!pruned(v)) options.emplace_back(v, s);
    };
    if (lex_mode_) {
      for (const std::uint32_t s : (level + 1 == nx_ ? lex_last_ : lex_middle_)) consider(s);
    } else {
      for (std::uint32_t s = 1; s <= full_; ++s) consider(s);
      std::stable_sort(options.begin(), options.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
    }

    std::vector<double> next(cost.size());
    for (const auto& [v, s] : options) {
      if (pruned(v)) continue;
      next = cost;
      for (std::size_t b = 0; b < ny_; ++b) {
        if (!(s >> b & 1u)) continue;
        const auto yrow = y_.row(b);
        for (std::size_t i = 0; i < nx_; ++i) {
          for (std::size_t j = 0; j < ny_; ++j) {
            double& slot = next[i * ny_ + j];
            slot = std::max(slot, std::abs(x_(i, row) - yrow[j]));
          }
        }
      }
      assign_[row] = s;
      search(level + 1, next, v, covered | s);
      assign_[row] = 0;
      if (lex_mode_ && found_) return;
    }
  }

  const FiniteMetricSpace& x_;
  const FiniteMetricSpace& y_;
  std::size_t nx_;
  std::size_t ny_;
  std::uint32_t full_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::vector<double> subset_diam_;
  std::vector<std::size_t> order_;
  std::vector<std::uint32_t> assign_;
  std::vector<std::uint32_t> best_rows_;
  std::vector<std::uint32_t> lex_middle_;
  std::vector<std::uint32_t> lex_last_;
  double bound_ = kInf;
  bool inclusive_ = false;
  bool found_ = false;
  bool lex_mode_ = false;
};

Correspondence rows_to_relation(std::size_t nx, std::size_t ny, const std::vector<std::uint32_t>& rows) {
  std::vector<IndexPair> pairs;
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      if (rows[i] >> j & 1u) pairs.push_back({i, j});
    }
  }
  return Correspondence(nx, ny, std::move(pairs));
}

}  // namespace

ExactResult gh_exact(const FiniteMetricSpace& x, const FiniteMetricSpace& y, const SearchOptions& opts) {
  if (opts.max_points < 1) throw Error(Errc::invalid_argument, "max_points must be >= 1");
  if (x.size() > opts.max_points || y.size() > opts.max_points) {
    throw Error(Errc::too_large, std::to_string(x.size()) + " x " + std::to_string(y.size()) +
                                     " points exceed the limit of " + std::to_string(opts.max_points));
  }
  if (y.size() > 16) throw Error(Errc::too_large, "column subsets are limited to 16 points");

  const std::size_t nx = x.size();
  const std::size_t ny = y.size();
  Correspondence incumbent = Correspondence::full_product(nx, ny);
  double incumbent_dis = distortion(x, y, incumbent);

  BranchAndBound bnb(x, y, opts.node_budget);
  std::vector<std::uint32_t> rows;
  double best = incumbent_dis;
  try {
    bool found = false;
    if (opts.initial_upper && *opts.initial_upper < incumbent_dis) {
      found = bnb.minimize(*opts.initial_upper, true, best, rows);
    }
    if (!found) found = bnb.minimize(incumbent_dis, false, best, rows);
    if (found) {
      incumbent = rows_to_relation(nx, ny, rows);
      incumbent_dis = best;
    }
  } catch (const BudgetExhausted&) {
    return ExactResult{incumbent_dis / 2.0, std::move(incumbent), SearchStatus::upper, bnb.nodes()};
  }

  try {
    if (bnb.smallest_at(incumbent_dis, rows)) incumbent = rows_to_relation(nx, ny, rows);
  } catch (const BudgetExhausted&) {
    // The value is proven; keep the relation found by the optimizer.
  }
  return ExactResult{incumbent_dis / 2.0, std::move(incumbent), SearchStatus::optimal, bnb.nodes()};
}

CorrespondenceRange::CorrespondenceRange(std::size_t nx, std::size_t ny) : nx_(nx), ny_(ny) {
  if (nx == 0 || ny == 0) throw Error(Errc::invalid_argument, "both sides need at least one point");
  if (nx * ny > kEnumerationLimit) {
    throw Error(Errc::too_large, "enumeration limited to nx*ny <= 20");
  }
  end_mask_ = static_cast<std::uint32_t>(1u << (nx * ny));
  row_mask_ = static_cast<std::uint32_t>((1u << ny) - 1);
}

bool CorrespondenceRange::is_valid(std::uint32_t mask) const noexcept {
  std::uint32_t cols = 0;
  for (std::size_t i = 0; i < nx_; ++i) {
    const std::uint32_t row = (mask >> (i * ny_)) & row_mask_;
    if (row == 0) return false;
    cols |= row;
  }
  return cols == row_mask_;
}

CorrespondenceRange::iterator::iterator(const CorrespondenceRange* range, std::uint32_t mask)
    : range_(range), mask_(mask) {
  settle();
}

void CorrespondenceRange::iterator::settle() {
  while (mask_ < range_->end_mask_ && !range_->is_valid(mask_)) ++mask_;
  pairs_.clear();
  if (mask_ >= range_->end_mask_) return;
  for (std::size_t b = 0; b < range_->nx_ * range_->ny_; ++b) {
    if (mask_ >> b & 1u) pairs_.push_back({b / range_->ny_, b % range_->ny_});
  }
}

void CorrespondenceRange::iterator::advance() {
  ++mask_;
  settle();
}

CorrespondenceRange::iterator CorrespondenceRange::begin() const { return iterator(this, 1); }
CorrespondenceRange::iterator CorrespondenceRange::end() const { return iterator(this, end_mask_); }

std::size_t count_correspondences(std::size_t nx, std::size_t ny) {
  const CorrespondenceRange range(nx, ny);
  std::size_t count = 0;
  for (auto it = range.begin(); it != range.end(); ++it) ++count;
  return count;
}

double exhaustive_min_distortion(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  const CorrespondenceRange range(x.size(), y.size());
  const std::size_t nx = x.size();
  const std::size_t ny = y.size();
  const std::size_t cells = nx * ny;

  // dis[mask] = max pair cost inside mask, built from mask minus its lowest bit.
  std::vector<double> cost(cells * cells);
  for (std::size_t p = 0; p < cells; ++p) {
    for (std::size_t q = 0; q < cells; ++q) {
      cost[p * cells + q] = std::abs(x(p / ny, q / ny) - y(p % ny, q % ny));
    }
  }
  const std::uint32_t end = static_cast<std::uint32_t>(1u << cells);
  std::vector<double> dis(end, 0.0);
  double best = kInf;
  for (std::uint32_t mask = 1; mask < end; ++mask) {
    const auto low = static_cast<std::size_t>(std::countr_zero(mask));
    const std::uint32_t rest = mask & (mask - 1);
    double d = dis[rest];
    for (std::uint32_t r = rest; r != 0; r &= r - 1) {
      d = std::max(d, cost[low * cells + static_cast<std::size_t>(std::countr_zero(r))]);
    }
    dis[mask] = d;
    if (d < best && range.is_valid(mask)) best = d;
  }
  return best;
}

bool verify_optimum(const FiniteMetricSpace& x, const FiniteMetricSpace& y, double value,
                    std::span<const IndexPair> pairs) {
  if (!is_correspondence(pairs, x.size(), y.size())) return false;
  const Correspondence r(x.size(), y.size(), std::vector<IndexPair>(pairs.begin(), pairs.end()));
  if (distortion(x, y, r) / 2.0 != value) return false;
  if (x.size() * y.size() <= kEnumerationLimit) {
    return !(exhaustive_min_distortion(x, y) / 2.0 < value);
  }
  return true;
}

}  // namespace ghkit
