#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ghkit/metric_space.hpp"
#include "ghkit/segment_circle.hpp"

namespace ghkit {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  Grids grids;
  std::uint64_t seed = 20240611;
  std::size_t sweep_steps = 100;
};

/// Random finite metric space on n points: Euclidean points in R^1..R^3 or a
/// shortest-path metric of a random weighted complete graph, with distances
/// drawn from a small set of values often enough to produce ties.
FiniteMetricSpace random_metric_space(std::mt19937_64& rng, std::size_t n);

/// Criteria 1..8; throws invalid_argument for other ids.
CriterionResult run_criterion(int id, const AcceptanceOptions& opts = {});
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {});

/// "PASS  3  plateau  <detail>" style line.
std::string format_result(const CriterionResult& r);

}  // namespace ghkit
