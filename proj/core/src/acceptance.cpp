#include "ghkit/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "ghkit/bounds.hpp"
#include "ghkit/error.hpp"
#include "ghkit/exact.hpp"
#include "ghkit/model_spaces.hpp"
#include "ghkit/nonlinearity.hpp"
#include "ghkit/plane_region.hpp"

namespace ghkit {
namespace {

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

/// Collects failures; the detail line keeps the first few.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) first_ += (first_.empty() ? "" : "; ") + what;
  }
  bool passed() const { return failures_ == 0; }
  std::string detail(const std::string& summary) const {
    if (failures_ == 0) return summary + fmt(" (%zu checks)", checks_);
    return fmt("%zu/%zu checks failed: ", failures_, checks_) + first_;
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::string first_;
};

CriterionResult formula_reproduction(const AcceptanceOptions& o) {
  Tally t;
  const auto start = std::chrono::steady_clock::now();
  const auto rows = sweep(0.0, 3.0 * kPi, o.sweep_steps, o.grids);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  double worst_slack = 0.0;
  double worst_gap = 0.0;
  for (const auto& r : rows) {
    worst_slack = std::max(worst_slack, r.slack);
    worst_gap = std::max({worst_gap, r.upper.value - r.formula_value, r.formula_value - r.lower.value});
    t.check(r.consistent(), fmt("row lambda=%.6g violates lower-slack <= formula <= upper+slack", r.lambda));
    t.check(r.slack <= 0.02, fmt("slack %.4g > 0.02 at lambda=%.6g", r.slack, r.lambda));
  }
  t.check(gh_formula(0.0) == kPi / 2.0, "formula(0) != pi/2");
  t.check(gh_formula(kPi) == kPi / 3.0, "formula(pi) != pi/3");
  t.check(gh_formula(3.0 * kPi) == kPi, "formula(3pi) != pi");
  t.check(!rows.empty() && rows.front().formula_value == kPi / 2.0, "first sweep row formula != pi/2");
  t.check(!rows.empty() && rows.back().formula_value == kPi, "last sweep row formula != pi");
  t.check(secs <= 60.0, fmt("sweep took %.1fs > 60s", secs));
  return {1, "formula reproduction", t.passed(),
          t.detail(fmt("%zu rows in %.1fs, max slack %.4g, max |bound - formula| %.3g", rows.size(), secs,
                       worst_slack, worst_gap))};
}

CriterionResult regime_a(const AcceptanceOptions& o) {
  Tally t;
  const auto circle = circle_space(o.grids.n_circle);
  const double m = static_cast<double>(o.grids.m_grid);
  const double n = static_cast<double>(o.grids.n_circle);
  double worst = 0.0;
  for (double lambda : {kPi / 6.0, kPi / 3.0, kPi / 2.0, 2.0 * kPi / 3.0}) {
    const double target = kPi / 2.0 - lambda / 4.0;
    const auto r = round_lower(circle, segment_grid(lambda, o.grids));
    t.check(std::abs(r.value - target) <= 1e-12, fmt("round_lower off by %.3g at %.6g", r.value - target, lambda));
    const auto c = certificate(lambda, o.grids);
    t.check(c.construction == "wrap_once", "regime A certificate is not wrap_once");
    const double gap = std::abs(c.measured / 2.0 - target);
    worst = std::max(worst, gap);
    t.check(gap <= 2.0 * kPi * 2.0 / n + 2.0 * lambda / m,
            fmt("wrap_once measured/2 off by %.3g at %.6g", gap, lambda));
  }
  return {2, "regime-A tightness", t.passed(), t.detail(fmt("max certificate gap %.3g", worst))};
}

CriterionResult plateau(const AcceptanceOptions& o) {
  Tally t;
  const auto circle = circle_space(o.grids.n_circle);
  const auto alpha = antipodal_map(o.grids.n_circle);
  const double mesh = 2.0 * kPi / static_cast<double>(o.grids.n_circle);
  double worst = -1.0;
  for (double lambda : {2.0 * kPi / 3.0, kPi, 7.0 * kPi / 6.0, 3.0 * kPi / 2.0, 5.0 * kPi / 3.0}) {
    const auto c = certificate(lambda, o.grids);
    worst = std::max(worst, c.measured / 2.0 - kPi / 3.0);
    t.check(c.measured / 2.0 <= kPi / 3.0 + c.slack, fmt("certificate misses pi/3 at %.6g", lambda));
    const auto seg = segment_grid(lambda, o.grids);
    const auto w = c_heuristic(seg).witness;
    t.check(objective(seg, w.values) <= 1e-9 && w.objective <= 1e-9,
            fmt("c(segment grid) not certified <= 1e-9 at %.6g", lambda));
    const auto lb = involution_lower(circle, alpha, seg, w);
    t.check(std::abs(lb.value - kPi / 3.0) <= 1e-9, fmt("involution bound %.12g at %.6g", lb.value, lambda));
    t.check(lb.continuous_hypothesis && std::abs(lb.slack - mesh) <= 1e-15, "involution bound not flagged");
  }
  return {3, "plateau", t.passed(), t.detail(fmt("max measured/2 - pi/3 = %.3g", worst))};
}

CriterionResult regime_c(const AcceptanceOptions& o) {
  Tally t;
  const auto circle = circle_space(o.grids.n_circle);
  const double mesh = 2.0 * kPi / static_cast<double>(o.grids.n_circle);
  for (double lambda : {11.0 * kPi / 6.0, 2.0 * kPi, 5.0 * kPi / 2.0, 3.0 * kPi}) {
    const double target = (lambda - kPi) / 2.0;
    const auto c = certificate(lambda, o.grids);
    t.check(c.measured / 2.0 <= target + c.slack, fmt("certificate misses (l-pi)/2 at %.6g", lambda));
    const auto d = diam_diff_lower(segment_grid(lambda, o.grids), circle);
    t.check(std::abs(d.value - target) <= mesh, fmt("diam_diff off by %.3g at %.6g", d.value - target, lambda));
  }
  return {4, "regime-C", t.passed(), t.detail("certificates and diameter route within slack")};
}

CriterionResult geometric_calculus(const AcceptanceOptions& o) {
  Tally t;
  std::mt19937_64 rng(o.seed ^ 0x5u);
  std::size_t disagreements = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const double lambda = std::uniform_real_distribution<double>(0.0, 3.0 * kPi)(rng);
    const auto count = std::uniform_int_distribution<std::size_t>(1, 60)(rng);
    std::uniform_real_distribution<double> ut(-lambda / 2.0, lambda / 2.0);
    std::uniform_real_distribution<double> up(-kPi, kPi);
    std::vector<PlanePoint> pts(count);
    for (auto& p : pts) {
      p = {ut(rng), up(rng)};
      // Exercise the seam: some angles sit exactly on +-pi.
      if (trial % 4 == 0 && rng() % 5 == 0) p.phi = (rng() % 2) ? kPi : -kPi;
    }
    const double mx = pairwise_max_f(pts);
    const double eps = 1e-9 * (1.0 + mx);
    for (double a : {mx - eps, mx, mx + eps}) {
      if (a < 0.0) continue;
      const bool brute = mx <= a;
      if (geomcalc_check(pts, a) != brute) ++disagreements;
    }
  }
  t.check(disagreements == 0, fmt("%zu disagreements", disagreements));
  return {5, "geometric calculus equivalence", t.passed(), t.detail("200 random sets, 0 disagreements")};
}

CriterionResult oracle_equivalence(const AcceptanceOptions& o) {
  Tally t;
  std::mt19937_64 rng(o.seed ^ 0x6u);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t nx = 0;
    std::size_t ny = 0;
    do {
      nx = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
      ny = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
    } while (nx * ny > 16);
    const auto x = random_metric_space(rng, nx);
    const auto y = random_metric_space(rng, ny);
    // Shapes like 8x2 or 16x1 exceed the default size guard (7) of the search.
    SearchOptions search;
    search.max_points = 16;
    const auto r = gh_exact(x, y, search);
    const double oracle = exhaustive_min_distortion(x, y) / 2.0;
    t.check(r.status == SearchStatus::optimal && r.value == oracle,
            fmt("trial %d: search %.17g vs oracle %.17g", trial, r.value, oracle));
  }
  for (int trial = 0; trial < 50; ++trial) {
    std::uniform_int_distribution<std::size_t> un(1, 5);
    const auto x = random_metric_space(rng, un(rng));
    const auto y = random_metric_space(rng, un(rng));
    const auto z = random_metric_space(rng, un(rng));
    const double xy = gh_exact(x, y).value;
    const double yx = gh_exact(y, x).value;
    const double yz = gh_exact(y, z).value;
    const double xz = gh_exact(x, z).value;
    t.check(std::abs(xy - yx) <= 1e-12, fmt("triple %d: asymmetric", trial));
    t.check(xz <= xy + yz + 1e-12, fmt("triple %d: triangle inequality fails", trial));
  }
  return {6, "oracle equivalence", t.passed(), t.detail("100 pairs exact, 50 triples")};
}

CriterionResult nonlinearity_degree(const AcceptanceOptions& o) {
  Tally t;
  std::mt19937_64 rng(o.seed ^ 0x7u);
  for (std::size_t n = 1; n <= 8; ++n) {
    const double length = std::uniform_real_distribution<double>(0.1, 10.0)(rng);
    const double c = c_exact(segment_space(n == 1 ? 0.0 : length, n)).value;
    t.check(c <= 1e-9, fmt("c(segment, n=%zu) = %.3g", n, c));
  }
  for (std::size_t n : {4u, 6u, 8u}) {
    const double c = c_exact(circle_space(n)).value;
    t.check(c >= kPi - 2.0 * kPi / static_cast<double>(n) && c <= kPi, fmt("c(circle %zu) = %.12g", n, c));
  }
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = random_metric_space(rng, std::uniform_int_distribution<std::size_t>(2, 7)(rng));
    const double c1 = c_exact(x).value;
    const double c2 = c_exact(scale(x, 2.0)).value;
    t.check(std::abs(c2 - 2.0 * c1) <= 1e-8, fmt("scaling: %.12g vs 2*%.12g", c2, c1));
  }
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = random_metric_space(rng, std::uniform_int_distribution<std::size_t>(1, 6)(rng));
    const auto c = c_exact(x);
    const auto img = lipschitz_image(x, c.witness);
    const double d = gh_exact(x, img.image).value;
    t.check(d <= c.value / 2.0 + 1e-8, fmt("image distance %.12g > c/2 = %.12g", d, c.value / 2.0));
  }
  return {7, "nonlinearity degree", t.passed(), t.detail("segments, circles, scaling, line images")};
}

CriterionResult hausdorff_construction(const AcceptanceOptions& o) {
  Tally t;
  const double step = 2.0 * kPi / static_cast<double>(o.grids.n_circle);
  for (double lambda : {2.0 * kPi, 3.0 * kPi}) {
    const double w = (lambda - kPi) / 2.0;
    const auto nw = static_cast<std::size_t>(std::ceil(w / step - 1e-9));
    const auto g = whisker_graph(lambda, o.grids.n_circle, nw);
    const double dh = hausdorff_distance(g.space, g.segment(), g.circle());
    t.check(std::abs(dh - w) <= 2.0 * step, fmt("d_H = %.12g vs %.12g at %.6g", dh, w, lambda));
    const auto corr = nearest_point_correspondence(g.space, g.segment(), g.circle());
    const double dis = distortion(corr.left, corr.right, corr.relation);
    t.check(dis <= lambda - kPi + 4.0 * step, fmt("distortion %.12g at %.6g", dis, lambda));
  }
  return {8, "Hausdorff construction", t.passed(), t.detail("whisker graphs at 2pi and 3pi")};
}

}  // namespace

FiniteMetricSpace random_metric_space(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> kind(0, 3);
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  switch (kind(rng)) {
    case 0:
    case 1: {
      // Euclidean points, integer coordinates half the time to force ties.
      const int dim = std::uniform_int_distribution<int>(1, 3)(rng);
      const bool grid = rng() % 2 == 0;
      std::vector<std::vector<double>> p(n, std::vector<double>(dim));
      for (auto& q : p) {
        for (auto& c : q) {
          c = grid ? static_cast<double>(std::uniform_int_distribution<int>(0, 4)(rng))
                   : std::uniform_real_distribution<double>(0.0, 4.0)(rng);
        }
      }
      // Coincident points are not allowed; move duplicates until all differ.
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
          if (p[i] == p[j]) {
            p[i][0] += 0.5;
            j = static_cast<std::size_t>(-1);
          }
        }
      }
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          double s = 0.0;
          for (int k = 0; k < dim; ++k) s += (p[i][k] - p[j][k]) * (p[i][k] - p[j][k]);
          d[i][j] = std::sqrt(s);
        }
      }
      break;
    }
    default: {
      // Shortest paths over random integer weights.
      std::uniform_int_distribution<int> weight(1, 5);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = weight(rng);
      }
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
        }
      }
      break;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) d[i][j] = d[j][i];
  }
  return validate_metric(d);
}

CriterionResult run_criterion(int id, const AcceptanceOptions& opts) {
  using Fn = CriterionResult (*)(const AcceptanceOptions&);
  static constexpr Fn table[] = {formula_reproduction, regime_a,           plateau,
                                 regime_c,             geometric_calculus, oracle_equivalence,
                                 nonlinearity_degree,  hausdorff_construction};
  static constexpr const char* names[] = {"formula reproduction", "regime-A tightness", "plateau",
                                          "regime-C", "geometric calculus equivalence", "oracle equivalence",
                                          "nonlinearity degree", "Hausdorff construction"};
  if (id < 1 || id > 8) throw Error(Errc::invalid_argument, "criteria are numbered 1..8");
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = table[id - 1](opts);
  } catch (const std::exception& e) {
    r = {id, names[id - 1], false, std::string("exception: ") + e.what()};
  }
  r.id = id;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 8; ++id) out.push_back(run_criterion(id, opts));
  return out;
}

std::string format_result(const CriterionResult& r) {
  return fmt("%s  %d  %-32s %7.2fs  %s", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
             r.detail.c_str());
}

}  // namespace ghkit
