#pragma once
// Brute-force reference implementations used as test oracles. They follow
// the definitions literally and share no code with the library.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ghkit/correspondence.hpp"
#include "ghkit/metric_space.hpp"

namespace oracle {

inline double diameter(const ghkit::FiniteMetricSpace& x) {
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) d = std::max(d, x(i, j));
  return d;
}

inline double min_ecc(const ghkit::FiniteMetricSpace& x) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i) {
    double e = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) e = std::max(e, x(i, j));
    best = std::min(best, e);
  }
  return best;
}

inline double distortion(const ghkit::FiniteMetricSpace& x, const ghkit::FiniteMetricSpace& y,
                         const std::vector<ghkit::IndexPair>& pairs) {
  double d = 0.0;
  for (const auto& p : pairs)
    for (const auto& q : pairs) d = std::max(d, std::abs(x(p.left, q.left) - y(p.right, q.right)));
  return d;
}

inline double hausdorff(const ghkit::FiniteMetricSpace& x, const std::vector<std::size_t>& a,
                        const std::vector<std::size_t>& b) {
  auto one_sided = [&](const std::vector<std::size_t>& from, const std::vector<std::size_t>& to) {
    double worst = 0.0;
    for (auto i : from) {
      double best = std::numeric_limits<double>::infinity();
      for (auto j : to) best = std::min(best, x(i, j));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_sided(a, b), one_sided(b, a));
}

/// Every point lies in some b-separated n-subset: enumerate all subsets.
inline bool homogeneous(const ghkit::FiniteMetricSpace& x, double b, std::size_t n) {
  const std::size_t size = x.size();
  if (n > size) return false;
  std::vector<bool> covered(size, false);
  for (unsigned mask = 0; mask < (1u << size); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != n) continue;
    bool ok = true;
    for (std::size_t i = 0; i < size && ok; ++i)
      for (std::size_t j = i + 1; j < size && ok; ++j)
        if ((mask >> i & 1u) && (mask >> j & 1u) && x(i, j) < b) ok = false;
    if (!ok) continue;
    for (std::size_t i = 0; i < size; ++i)
      if (mask >> i & 1u) covered[i] = true;
  }
  return std::all_of(covered.begin(), covered.end(), [](bool c) { return c; });
}

/// Minimum distortion over all relations of the nx*ny grid that are
/// correspondences (plain subset enumeration, nx*ny <= 16).
inline double min_distortion(const ghkit::FiniteMetricSpace& x, const ghkit::FiniteMetricSpace& y) {
  const std::size_t nx = x.size(), ny = y.size();
  double best = std::numeric_limits<double>::infinity();
  for (unsigned mask = 1; mask < (1u << (nx * ny)); ++mask) {
    std::vector<ghkit::IndexPair> pairs;
    std::vector<bool> row(nx, false), col(ny, false);
    for (std::size_t i = 0; i < nx; ++i)
      for (std::size_t j = 0; j < ny; ++j)
        if (mask >> (i * ny + j) & 1u) {
          pairs.push_back({i, j});
          row[i] = col[j] = true;
        }
    if (std::find(row.begin(), row.end(), false) != row.end()) continue;
    if (std::find(col.begin(), col.end(), false) != col.end()) continue;
    best = std::min(best, distortion(x, y, pairs));
  }
  return best;
}

/// c(X) for a 3-point space by grid search over the middle value, for each
/// choice of middle point. Accurate to about 2*h.
inline double c_three_points(const ghkit::FiniteMetricSpace& x, double h) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < 3; ++m) {
    const std::size_t p = (m + 1) % 3, r = (m + 2) % 3;
    const double pr = x(p, r), pm = x(p, m), mr = x(m, r);
    for (double s = 0.0; s <= pr + 1e-12; s += h) {
      for (double t = 0.0; t <= s + 1e-12; t += h) {
        if (t > pm + 1e-12 || s - t > mr + 1e-12) continue;
        best = std::min(best, std::max({pr - s, pm - t, mr - (s - t)}));
      }
    }
  }
  return best;
}

}  // namespace oracle
