#include "ghkit/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "ghkit/error.hpp"
#include "ghkit/parallel.hpp"

namespace ghkit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Feasibility of "values non-decreasing along `order`, 1-Lipschitz, and
/// d - |df| <= a for every pair" as a system of difference constraints.
/// Along the order |f_l - f_k| = f_l - f_k, so every constraint reads
/// f_v - f_u <= w(u, v); the system is feasible iff the constraint graph has
/// no negative cycle.
class OrderSolver {
 public:
  OrderSolver(const FiniteMetricSpace& x, double tolerance)
      : x_(x), n_(x.size()), tolerance_(tolerance), eps_(1e-12 * (1.0 + diameter(x))), w_(n_ * n_) {}

  bool feasible(std::span<const std::size_t> order, double a, std::vector<double>* values) {
    const std::size_t n = n_;
    std::fill(w_.begin(), w_.end(), kInf);
    for (std::size_t k = 0; k < n; ++k) w_[k * n + k] = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t l = k + 1; l < n; ++l) {
        const double d = x_(order[k], order[l]);
        w_[k * n + l] = d;  // f_l - f_k <= d
        double back = a - d;  // f_k - f_l <= a - d
        if (l == k + 1) back = std::min(back, 0.0);
        w_[l * n + k] = back;
      }
    }
    for (std::size_t m = 0; m < n; ++m) {
      for (std::size_t i = 0; i < n; ++i) {
        const double wim = w_[i * n + m];
        if (wim == kInf) continue;
        for (std::size_t j = 0; j < n; ++j) {
          const double via = wim + w_[m * n + j];
          if (via < w_[i * n + j]) w_[i * n + j] = via;
        }
      }
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (w_[k * n + k] < -eps_) return false;
    }
    if (values != nullptr) {
      values->assign(n, 0.0);
      for (std::size_t v = 0; v < n; ++v) {
        double pot = 0.0;
        for (std::size_t u = 0; u < n; ++u) pot = std::min(pot, w_[u * n + v]);
        (*values)[order[v]] = pot;
      }
    }
    return true;
  }

  /// Values attaining the smallest threshold for `order` (to within the
  /// tolerance), or nothing when the order cannot beat `upper`.
  std::optional<std::vector<double>> solve(std::span<const std::size_t> order, double upper) {
    std::vector<double> values;
    if (feasible(order, 0.0, &values)) return values;
    double hi = upper - tolerance_ / 2.0;
    if (hi <= 0.0 || !feasible(order, hi, nullptr)) return std::nullopt;
    double lo = 0.0;
    while (hi - lo > tolerance_ / 2.0) {
      const double mid = 0.5 * (lo + hi);
      if (feasible(order, mid, nullptr)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    feasible(order, hi, &values);
    return values;
  }

 private:
  const FiniteMetricSpace& x_;
  std::size_t n_;
  double tolerance_;
  double eps_;
  std::vector<double> w_;
};

std::vector<std::size_t> order_of(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  return order;
}

LipschitzWitness basepoint_witness(const FiniteMetricSpace& x, std::size_t p) {
  auto r = x.row(p);
  return make_witness(x, std::vector<double>(r.begin(), r.end()));
}

}  // namespace

double objective(const FiniteMetricSpace& x, std::span<const double> values, double lipschitz_tolerance) {
  if (values.size() != x.size()) {
    throw Error(Errc::invalid_witness, "expected " + std::to_string(x.size()) + " values, got " +
                                           std::to_string(values.size()));
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(values[i])) throw Error(Errc::invalid_witness, "non-finite value", {i});
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double gap = std::abs(values[i] - values[j]);
      const double excess = gap - x(i, j);
      if (excess > lipschitz_tolerance) {
        throw Error(Errc::not_lipschitz,
                    "|f(" + std::to_string(i) + ") - f(" + std::to_string(j) + ")| exceeds the distance by " +
                        std::to_string(excess),
                    {i, j});
      }
      worst = std::max(worst, x(i, j) - gap);
    }
  }
  return worst;
}

LipschitzWitness make_witness(const FiniteMetricSpace& x, std::vector<double> values,
                              double lipschitz_tolerance) {
  if (!values.empty()) {
    const double lo = *std::min_element(values.begin(), values.end());
    for (double& v : values) v -= lo;
  }
  const double obj = objective(x, values, lipschitz_tolerance);
  return LipschitzWitness{std::move(values), obj};
}

NonlinearityResult c_exact(const FiniteMetricSpace& x, const ExactNonlinearityOptions& opts) {
  const std::size_t n = x.size();
  if (n > opts.max_points) {
    throw Error(Errc::too_large, std::to_string(n) + " points exceed the exact limit of " +
                                     std::to_string(opts.max_points));
  }
  NonlinearityResult seed{};
  seed.witness = make_witness(x, std::vector<double>(n, 0.0));
  for (std::size_t p = 0; p < n; ++p) {
    auto w = basepoint_witness(x, p);
    if (w.objective < seed.witness.objective) seed.witness = std::move(w);
  }
  seed.value = seed.witness.objective;
  if (n <= 1) return seed;

  // One block per leading element. Orders ending below their first element
  // are mirror images (f -> max f - f) of orders already covered.
  std::vector<NonlinearityResult> block(n, seed);
  parallel_for(n, [&](std::size_t first) {
    OrderSolver solver(x, opts.tolerance);
    NonlinearityResult& best = block[first];
    best.orders_solved = 0;
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < n; ++i) {
      if (i != first) rest.push_back(i);
    }
    std::vector<std::size_t> order(n);
    order[0] = first;
    do {
      if (rest.back() < first) continue;
      std::copy(rest.begin(), rest.end(), order.begin() + 1);
      ++best.orders_solved;
      if (auto values = solver.solve(order, best.value)) {
        auto w = make_witness(x, std::move(*values));
        if (w.objective < best.value) {
          best.value = w.objective;
          best.witness = std::move(w);
        }
      }
    } while (std::next_permutation(rest.begin(), rest.end()));
  });

  NonlinearityResult result = seed;
  result.orders_solved = 0;
  for (auto& b : block) {
    result.orders_solved += b.orders_solved;
    if (b.value < result.value) {
      result.value = b.value;
      result.witness = b.witness;
    }
  }
  return result;
}

NonlinearityResult c_heuristic(const FiniteMetricSpace& x, const HeuristicNonlinearityOptions& opts) {
  const std::size_t n = x.size();
  std::mt19937_64 rng(opts.seed);

  std::vector<std::size_t> bases;
  if (n <= 64) {
    bases.resize(n);
    std::iota(bases.begin(), bases.end(), std::size_t{0});
  } else {
    // Ends of a diametral pair, then seeded random basepoints.
    std::size_t a = 0;
    std::size_t b = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (x(i, j) > x(a, b)) {
          a = i;
          b = j;
        }
      }
    }
    bases = {a, b};
    for (std::size_t r = 0; r < opts.restarts; ++r) bases.push_back(static_cast<std::size_t>(rng() % n));
  }

  std::vector<LipschitzWitness> starts;
  starts.reserve(bases.size());
  for (const std::size_t p : bases) starts.push_back(basepoint_witness(x, p));
  std::stable_sort(starts.begin(), starts.end(),
                   [](const auto& l, const auto& r) { return l.objective < r.objective; });

  NonlinearityResult result{};
  result.witness = starts.front();
  result.value = result.witness.objective;
  if (n > opts.refine_limit || n <= 1 || result.value <= opts.tolerance) return result;

  OrderSolver solver(x, opts.tolerance);
  const bool all_swaps = n <= 10;
  for (std::size_t r = 0; r < opts.restarts; ++r) {
    std::vector<std::size_t> order;
    if (r < starts.size()) {
      order = order_of(starts[r].values);
    } else {
      order.resize(n);
      std::iota(order.begin(), order.end(), std::size_t{0});
      for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[rng() % (i + 1)]);
    }
    double current = diameter(x) + 1.0;
    if (auto v = solver.solve(order, current)) {
      auto w = make_witness(x, std::move(*v));
      current = w.objective;
      ++result.orders_solved;
      if (w.objective < result.value) {
        result.value = w.objective;
        result.witness = std::move(w);
      }
    }
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t i = 0; i + 1 < n && !improved; ++i) {
        for (std::size_t j = i + 1; j < (all_swaps ? n : i + 2) && !improved; ++j) {
          std::swap(order[i], order[j]);
          ++result.orders_solved;
          if (auto v = solver.solve(order, current)) {
            auto w = make_witness(x, std::move(*v));
            if (w.objective < current) {
              current = w.objective;
              improved = true;
              if (w.objective < result.value) {
                result.value = w.objective;
                result.witness = std::move(w);
              }
            }
          }
          if (!improved) std::swap(order[i], order[j]);
        }
      }
    }
  }
  return result;
}

NonlinearityResult c_upper(const FiniteMetricSpace& x, std::size_t exact_limit) {
  if (x.size() <= exact_limit) return c_exact(x, {.max_points = exact_limit});
  return c_heuristic(x);
}

void validate_antipodal_involution(const FiniteMetricSpace& x, std::span<const std::size_t> alpha,
                                   double tolerance) {
  const std::size_t n = x.size();
  if (alpha.size() != n) {
    throw Error(Errc::not_antipodal_involution, "map has " + std::to_string(alpha.size()) +
                                                    " entries for " + std::to_string(n) + " points");
  }
  const double diam = diameter(x);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = alpha[i];
    if (j >= n || alpha[j] != i || j == i) {
      throw Error(Errc::not_antipodal_involution, "map is not a fixed-point-free involution at " +
                                                      std::to_string(i), {i});
    }
    if (std::abs(x(i, j) - diam) > tolerance) {
      throw Error(Errc::not_antipodal_involution,
                  "d(x, alpha x) differs from the diameter at " + std::to_string(i), {i, j});
    }
  }
}

std::optional<std::vector<std::size_t>> detect_antipodal_involution(const FiniteMetricSpace& x,
                                                                    double tolerance) {
  const std::size_t n = x.size();
  if (n < 2) return std::nullopt;
  const double diam = diameter(x);
  std::vector<std::size_t> alpha(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t partners = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && std::abs(x(i, j) - diam) <= tolerance) {
        alpha[i] = j;
        ++partners;
      }
    }
    if (partners != 1) return std::nullopt;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (alpha[alpha[i]] != i) return std::nullopt;
  }
  return alpha;
}

AntipodalBound antipodal_lower_bound(const FiniteMetricSpace& x, std::span<const std::size_t> alpha,
                                     std::optional<std::span<const std::size_t>> cycle) {
  validate_antipodal_involution(x, alpha);
  if (!cycle) return AntipodalBound{0.0, true, true};

  const std::size_t n = x.size();
  const auto& c = *cycle;
  std::vector<bool> seen(n, false);
  if (c.size() != n) throw Error(Errc::invalid_argument, "cycle must list every point once");
  for (const std::size_t v : c) {
    if (v >= n || seen[v]) throw Error(Errc::invalid_argument, "cycle must list every point once");
    seen[v] = true;
  }

  double gap = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t u = c[k];
    const std::size_t v = c[(k + 1) % n];
    gap = std::max(gap, 0.5 * (x(u, v) + x(alpha[u], alpha[v])));
  }
  const double value = diameter(x) - gap;
  if (value <= 0.0) return AntipodalBound{0.0, true, false};
  return AntipodalBound{value, false, false};
}

LipschitzImage lipschitz_image(const FiniteMetricSpace& x, const LipschitzWitness& w,
                               double lipschitz_tolerance) {
  if (w.values.size() != x.size()) {
    throw Error(Errc::invalid_witness, "witness has " + std::to_string(w.values.size()) +
                                           " values for " + std::to_string(x.size()) + " points");
  }
  try {
    objective(x, w.values, lipschitz_tolerance);
  } catch (const Error& e) {
    throw Error(Errc::invalid_witness, e.what(), e.indices());
  }

  std::vector<double> line(w.values);
  std::sort(line.begin(), line.end());
  line.erase(std::unique(line.begin(), line.end()), line.end());
  const std::size_t m = line.size();
  std::vector<double> d(m * m);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < m; ++i) {
    labels.push_back("z" + std::to_string(i));
    for (std::size_t j = 0; j < m; ++j) d[i * m + j] = std::abs(line[i] - line[j]);
  }
  std::vector<IndexPair> pairs;
  pairs.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto pos = std::lower_bound(line.begin(), line.end(), w.values[i]) - line.begin();
    pairs.push_back({i, static_cast<std::size_t>(pos)});
  }
  return LipschitzImage{FiniteMetricSpace::from_trusted(std::move(d), std::move(labels)),
                        Correspondence(x.size(), m, std::move(pairs))};
}

}  // namespace ghkit
