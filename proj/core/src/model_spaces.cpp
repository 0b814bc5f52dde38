#include "ghkit/model_spaces.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <utility>

#include "ghkit/error.hpp"
#include "ghkit/parallel.hpp"

namespace ghkit {

double segment_coordinate(double length, std::size_t points, std::size_t k) {
  if (points < 2) return 0.0;
  return length * (static_cast<double>(k) / static_cast<double>(points - 1));
}

FiniteMetricSpace segment_space(double length, std::size_t points) {
  if (!(length >= 0.0) || !std::isfinite(length)) {
    throw Error(Errc::negative_length, "segment length must be finite and >= 0");
  }
  if (points == 0) throw Error(Errc::too_few_points, "segment grid needs at least one point");
  if (length == 0.0) return FiniteMetricSpace::single_point("t0");
  if (points == 1) {
    throw Error(Errc::too_few_points, "a segment of positive length needs at least two grid points");
  }
  const std::size_t m = points;
  std::vector<double> d(m * m);
  std::vector<std::string> labels;
  labels.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    labels.push_back("t" + std::to_string(i));
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t gap = i > j ? i - j : j - i;
      d[i * m + j] = segment_coordinate(length, m, gap);
    }
  }
  return FiniteMetricSpace::from_trusted(std::move(d), std::move(labels));
}

FiniteMetricSpace circle_space(std::size_t n) {
  if (n < 3) throw Error(Errc::too_few_points, "circle grid needs n >= 3");
  std::vector<double> d(n * n);
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back("phi" + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t k = i > j ? i - j : j - i;
      const std::size_t steps = std::min(k, n - k);
      // pi * (2 steps / n) keeps the antipodal distance exactly pi.
      d[i * n + j] = kPi * (2.0 * static_cast<double>(steps) / static_cast<double>(n));
    }
  }
  return FiniteMetricSpace::from_trusted(std::move(d), std::move(labels));
}

std::vector<std::size_t> antipodal_map(std::size_t n) {
  if (n == 0 || n % 2 != 0) throw Error(Errc::odd_order, "antipodal map needs an even point count");
  std::vector<std::size_t> alpha(n);
  for (std::size_t k = 0; k < n; ++k) alpha[k] = (k + n / 2) % n;
  return alpha;
}

FiniteMetricSpace shortest_path_metric(const MetricGraph& g) {
  const std::size_t n = g.vertices;
  if (n == 0) throw Error(Errc::invalid_argument, "graph has no vertices");
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  for (const auto& e : g.edges) {
    if (e.u >= n || e.v >= n) {
      throw Error(Errc::index_out_of_range, "edge endpoint out of range", {e.u, e.v});
    }
    if (!(e.length > 0.0) || !std::isfinite(e.length)) {
      throw Error(Errc::invalid_argument, "edge lengths must be positive and finite", {e.u, e.v});
    }
    adj[e.u].emplace_back(e.v, e.length);
    adj[e.v].emplace_back(e.u, e.length);
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> d(n * n, kInf);
  parallel_for(n, [&](std::size_t s) {
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    double* row = d.data() + s * n;
    row[s] = 0.0;
    heap.emplace(0.0, s);
    while (!heap.empty()) {
      const auto [du, u] = heap.top();
      heap.pop();
      if (du > row[u]) continue;
      for (const auto& [v, w] : adj[u]) {
        if (du + w < row[v]) {
          row[v] = du + w;
          heap.emplace(row[v], v);
        }
      }
    }
  });

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (d[i * n + j] == kInf) {
        throw Error(Errc::disconnected_graph, "no path between vertices", {i, j});
      }
      // Path sums may round differently in the two directions.
      const double m = std::min(d[i * n + j], d[j * n + i]);
      d[i * n + j] = m;
      d[j * n + i] = m;
    }
  }
  return FiniteMetricSpace::from_trusted(std::move(d), {});
}

WhiskerGraph whisker_graph(double lambda, std::size_t n_circle, std::size_t n_whisker) {
  if (!(lambda >= 2.0 * kPi)) throw Error(Errc::lambda_too_small, "whisker graph needs lambda >= 2 pi");
  if (n_circle < 4 || n_circle % 2 != 0) {
    throw Error(Errc::odd_order, "whisker graph needs an even circle grid with at least 4 points");
  }
  if (n_whisker == 0) throw Error(Errc::too_few_points, "whiskers need at least one edge");

  const double whisker_length = (lambda - kPi) / 2.0;
  const std::size_t n = n_circle;
  const std::size_t half = n / 2;
  const double arc = 2.0 * kPi / static_cast<double>(n);
  const double step = whisker_length / static_cast<double>(n_whisker);

  MetricGraph g;
  g.vertices = n + 2 * n_whisker;
  for (std::size_t k = 0; k < n; ++k) g.edges.push_back({k, (k + 1) % n, arc});
  // Whisker at angle 0 uses vertices n .. n+n_whisker-1 (tip last); the one
  // at angle pi uses the next n_whisker vertices.
  const std::size_t right = n;
  const std::size_t left = n + n_whisker;
  for (std::size_t k = 0; k < n_whisker; ++k) {
    g.edges.push_back({k == 0 ? std::size_t{0} : right + k - 1, right + k, step});
    g.edges.push_back({k == 0 ? half : left + k - 1, left + k, step});
  }

  FiniteMetricSpace space = shortest_path_metric(g);

  std::vector<std::size_t> circle(n);
  for (std::size_t k = 0; k < n; ++k) circle[k] = k;

  std::vector<std::size_t> segment;
  segment.reserve(n_whisker * 2 + half + 1);
  for (std::size_t k = n_whisker; k-- > 0;) segment.push_back(left + k);
  for (std::size_t k = half; k <= n; ++k) segment.push_back(k % n);
  for (std::size_t k = 0; k < n_whisker; ++k) segment.push_back(right + k);

  return WhiskerGraph{std::move(g), std::move(space), std::move(circle), std::move(segment),
                      whisker_length};
}

}  // namespace ghkit
