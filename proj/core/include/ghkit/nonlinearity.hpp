#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ghkit/correspondence.hpp"
#include "ghkit/metric_space.hpp"

namespace ghkit {

inline constexpr double kDefaultLipschitzTolerance = 1e-9;
inline constexpr double kDefaultOptTolerance = 1e-9;

/// Values of a 1-Lipschitz function on the points of a space, normalized so
/// that the smallest value is 0, together with
///   objective = max over pairs of d(x, y) - |f(x) - f(y)|.
struct LipschitzWitness {
  std::vector<double> values;
  double objective = 0.0;
};

/// max over pairs of d(i, j) - |v_i - v_j|. Throws NotLipschitz (indices
/// i, j) when |v_i - v_j| exceeds d(i, j) by more than `lipschitz_tolerance`.
double objective(const FiniteMetricSpace& x, std::span<const double> values,
                 double lipschitz_tolerance = kDefaultLipschitzTolerance);

/// Shifts `values` to min 0 and evaluates the objective.
LipschitzWitness make_witness(const FiniteMetricSpace& x, std::vector<double> values,
                              double lipschitz_tolerance = kDefaultLipschitzTolerance);

struct NonlinearityResult {
  double value = 0.0;  // equals witness.objective
  LipschitzWitness witness;
  std::size_t orders_solved = 0;
};

struct ExactNonlinearityOptions {
  std::size_t max_points = 8;
  double tolerance = kDefaultOptTolerance;
};

/// Nonlinearity degree c(X) to within `tolerance`: the minimum over all
/// 1-Lipschitz f of max d(x,y) - |f(x) - f(y)|. Every total order of the
/// values turns the problem into difference constraints in the threshold,
/// solved by bisection; the minimum is taken over all orders. Throws
/// TooLarge above `max_points`.
NonlinearityResult c_exact(const FiniteMetricSpace& x, const ExactNonlinearityOptions& opts = {});

struct HeuristicNonlinearityOptions {
  std::size_t restarts = 8;
  std::uint64_t seed = 0;
  /// Order local search runs only up to this many points; larger spaces
  /// use distance-to-basepoint witnesses alone.
  std::size_t refine_limit = 24;
  double tolerance = kDefaultOptTolerance;
};

/// Upper bound on c(X) with a feasible witness. Starts from distance-to-
/// basepoint functions, then runs a local search over value orders with the
/// per-order problem solved exactly. Deterministic for a fixed seed.
NonlinearityResult c_heuristic(const FiniteMetricSpace& x, const HeuristicNonlinearityOptions& opts = {});

/// Exact when the space is small enough, heuristic otherwise.
NonlinearityResult c_upper(const FiniteMetricSpace& x, std::size_t exact_limit = 8);

/// Throws NotAntipodalInvolution unless alpha is an involution without fixed
/// points and d(x, alpha(x)) = diam X for every x (within `tolerance`).
void validate_antipodal_involution(const FiniteMetricSpace& x, std::span<const std::size_t> alpha,
                                   double tolerance = kDefaultMetricTolerance);

/// The unique antipodal involution of X, when every point has exactly one
/// diametral partner.
std::optional<std::vector<std::size_t>> detect_antipodal_involution(
    const FiniteMetricSpace& x, double tolerance = kDefaultMetricTolerance);

struct AntipodalBound {
  double value = 0.0;
  bool vacuous = false;
  /// No cyclic adjacency order was supplied; the bound is 0.
  bool missing_cycle = false;
};

/// Lower bound on c(X) from the sign change of g(x) = f(x) - f(alpha x)
/// along the cyclic order `cycle`: some consecutive pair (x_k, x_k+1) has
/// |g| <= gap_k at one of its ends, with
///   gap_k = (d(x_k, x_k+1) + d(alpha x_k, alpha x_k+1)) / 2,
/// so c(X) >= diam X - max_k gap_k. For the even circle grid in index order
/// this is pi - 2pi/n.
AntipodalBound antipodal_lower_bound(const FiniteMetricSpace& x, std::span<const std::size_t> alpha,
                                     std::optional<std::span<const std::size_t>> cycle);

struct LipschitzImage {
  FiniteMetricSpace image;  // distinct values with |u - v|, ascending
  Correspondence graph;     // i -> value of i
};

/// The image of the witness on the real line and the graph correspondence;
/// distortion(graph) equals the witness objective.
LipschitzImage lipschitz_image(const FiniteMetricSpace& x, const LipschitzWitness& w,
                               double lipschitz_tolerance = kDefaultLipschitzTolerance);

}  // namespace ghkit
