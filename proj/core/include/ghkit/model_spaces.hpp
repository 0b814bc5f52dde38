#pragma once

#include <cstddef>
#include <vector>

#include "ghkit/metric_space.hpp"

namespace ghkit {

inline constexpr double kPi = 3.14159265358979323846;

/// Uniform grid t_k = length * k / (points - 1) on [0, length] with
/// |t_i - t_j|. length == 0 yields the one-point space for any count.
FiniteMetricSpace segment_space(double length, std::size_t points);

/// Coordinate of grid point k of segment_space(length, points).
double segment_coordinate(double length, std::size_t points, std::size_t k);

/// n equally spaced points of the unit circle with the arc-length metric.
/// Antipodal pairs of an even circle sit at distance exactly pi.
FiniteMetricSpace circle_space(std::size_t n);

/// k -> k + n/2 mod n on circle_space(n).
std::vector<std::size_t> antipodal_map(std::size_t n);

struct GraphEdge {
  std::size_t u;
  std::size_t v;
  double length;
};

struct MetricGraph {
  std::size_t vertices = 0;
  std::vector<GraphEdge> edges;
};

/// All-pairs shortest paths (Dijkstra from every source).
FiniteMetricSpace shortest_path_metric(const MetricGraph& g);

/// Unit circle with two path "whiskers" of length (lambda - pi)/2 attached at
/// the circle vertices of angle 0 and pi. `segment_part` lists, in arclength
/// order, the far whisker tip at angle pi, that whisker, the lower semicircle
/// (angles pi..2pi), and the other whisker out to its tip; with the induced
/// metric it is a grid of a segment of length lambda.
struct WhiskerGraph {
  MetricGraph graph;
  FiniteMetricSpace space;
  std::vector<std::size_t> circle_part;
  std::vector<std::size_t> segment_part;
  double whisker_length = 0.0;

  PointSubset circle() const { return PointSubset(space, circle_part); }
  PointSubset segment() const { return PointSubset(space, segment_part); }
};

WhiskerGraph whisker_graph(double lambda, std::size_t n_circle, std::size_t n_whisker);

}  // namespace ghkit
