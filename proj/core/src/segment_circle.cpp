#include "ghkit/segment_circle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>

#include "ghkit/error.hpp"
#include "ghkit/parallel.hpp"

namespace ghkit {
namespace {

constexpr double kTwoPi = 2.0 * kPi;
// Slop on the geometric validation threshold; the sampled relation reaches
// lambda - pi exactly, so only rounding needs absorbing.
constexpr double kValidationSlop = 1e-9;

PlanePoint mirror(PlanePoint p) { return {-p.t, -p.phi}; }

double finite_slack(double lambda, const Grids& g) {
  return (lambda / static_cast<double>(g.m_grid) + kTwoPi / static_cast<double>(g.n_circle)) / 2.0;
}

// PL certificates: true distortion <= measured + error_bound, error_bound = 4 step.
double pl_slack(const Grids& g) { return 2.0 * g.pl_step; }

std::vector<PlaneSegment> c1_segments(double lambda, PlanePoint b, bool with_connectors) {
  const PlanePoint a{lambda / 2.0 - kPi / 2.0, kPi};
  const PlanePoint c{(lambda + kPi) / 4.0, (lambda + kPi) / 4.0};
  const PlanePoint d{lambda / 2.0, kPi / 2.0};
  std::vector<PlaneSegment> segs{
      {mirror(c), c, "diagonal"},
      {a, d, "green"},
      {mirror(a), mirror(d), "red"},
  };
  if (with_connectors) {
    segs.push_back({a, b, "cyan"});
    segs.push_back({mirror(a), mirror(b), "magenta"});
  }
  return segs;
}

/// Anchored relation at `lambda`, validated geometrically; on failure a
/// pattern search moves the connector endpoint B.
PLCorrespondence validated_c1(double lambda, const Grids& grids, std::string& path) {
  const double target = lambda - kPi;
  auto candidate = anchored_pl(lambda);
  if (geomcalc_check(pl_sample(candidate, grids.pl_step), target + kValidationSlop)) {
    path = "anchored_pl";
    return candidate;
  }

  // Fallback: minimise the sampled distortion over B, kept inside Q.
  const double coarse = 4.0 * grids.pl_step;
  auto score = [&](PlanePoint b) {
    if (std::abs(b.t) > lambda / 2.0 || std::abs(b.phi) > kPi) return std::numeric_limits<double>::infinity();
    try {
      return pl_distortion(PLCorrespondence(lambda, c1_segments(lambda, b, true)), coarse).value;
    } catch (const Error&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  PlanePoint best{kPi / 2.0, kPi / 2.0};
  double best_score = score(best);
  for (double h = kPi / 8.0; h > grids.pl_step; h /= 2.0) {
    bool moved = true;
    while (moved) {
      moved = false;
      for (const auto& [dt, dp] : std::array<std::pair<double, double>, 4>{{{h, 0}, {-h, 0}, {0, h}, {0, -h}}}) {
        const PlanePoint b{best.t + dt, best.phi + dp};
        const double s = score(b);
        if (s < best_score) {
          best = b;
          best_score = s;
          moved = true;
        }
      }
    }
  }
  candidate = PLCorrespondence(lambda, c1_segments(lambda, best, true));
  if (!geomcalc_check(pl_sample(candidate, grids.pl_step), target + 2.0 * pl_slack(grids))) {
    throw Error(Errc::certificate_failed, "no C1 relation found at lambda = " + std::to_string(lambda));
  }
  path = "anchored_pl+search";
  return candidate;
}

/// The lambda = 5pi/3 member of the C1 family, validated once per pl_step;
/// B2 relations are clippings of it.
PLCorrespondence plateau_template(const Grids& grids) {
  static std::mutex mu;
  static std::map<double, PLCorrespondence> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(grids.pl_step);
  if (it == cache.end()) {
    std::string path;
    it = cache.emplace(grids.pl_step, validated_c1(5.0 * kPi / 3.0, grids, path)).first;
  }
  return it->second;
}

BoundRecord upper_record(const SegmentCircleCertificate& c) {
  BoundRecord r;
  r.kind = BoundKind::upper;
  r.value = c.measured / 2.0;
  r.source = c.construction;
  r.params = {{"lambda", c.lambda}, {"error_bound", c.error_bound}};
  if (std::holds_alternative<PLCorrespondence>(c.relation)) {
    r.params.push_back({"pl_step", c.grids.pl_step});
  }
  std::visit([&](const auto& rel) { r.certificate = rel; }, c.relation);
  r.slack = c.slack;
  return r;
}

}  // namespace

const char* to_string(Regime r) noexcept {
  switch (r) {
    case Regime::A: return "A";
    case Regime::B1: return "B1";
    case Regime::B2: return "B2";
    case Regime::C1: return "C1";
    case Regime::C2: return "C2";
  }
  return "?";
}

double gh_formula(double lambda) {
  if (!(lambda >= 0.0)) throw Error(Errc::negative_lambda, "lambda must be >= 0");
  if (lambda <= 2.0 * kPi / 3.0) return kPi / 2.0 - lambda / 4.0;
  if (lambda <= 5.0 * kPi / 3.0) return kPi / 3.0;
  return (lambda - kPi) / 2.0;
}

Regime regime_of(double lambda) {
  if (!(lambda >= 0.0)) throw Error(Errc::negative_lambda, "lambda must be >= 0");
  if (lambda <= 2.0 * kPi / 3.0) return Regime::A;
  if (lambda <= 7.0 * kPi / 6.0) return Regime::B1;
  if (lambda <= 5.0 * kPi / 3.0) return Regime::B2;
  if (lambda <= kTwoPi) return Regime::C1;
  return Regime::C2;
}

FiniteMetricSpace segment_grid(double lambda, const Grids& grids) {
  return segment_space(lambda, grids.m_grid + 1);
}

PLCorrespondence anchored_pl(double lambda, bool with_connectors) {
  if (lambda < 5.0 * kPi / 3.0 - 1e-12 || lambda > 3.0 * kPi + 1e-12) {
    throw Error(Errc::lambda_out_of_range, "anchored relation needs 5pi/3 <= lambda <= 3pi");
  }
  return PLCorrespondence(lambda, c1_segments(lambda, {kPi / 2.0, kPi / 2.0}, with_connectors));
}

SegmentCircleCertificate certificate(double lambda, const Grids& grids) {
  SegmentCircleCertificate c;
  c.lambda = lambda;
  c.regime = regime_of(lambda);
  c.grids = grids;
  const auto circle = circle_space(grids.n_circle);

  auto finish_finite = [&](const FiniteMetricSpace& seg, Correspondence rel, std::string name) {
    c.measured = distortion(seg, circle, rel);
    c.relation = std::move(rel);
    c.construction = std::move(name);
  };
  auto finish_pl = [&](PLCorrespondence rel, std::string name) {
    const auto d = pl_distortion(rel, grids.pl_step);
    c.measured = d.value;
    c.error_bound = d.error_bound;
    c.slack = pl_slack(grids);
    c.relation = std::move(rel);
    c.construction = std::move(name);
  };

  switch (c.regime) {
    case Regime::A: {
      const auto seg = segment_grid(lambda, grids);
      c.slack = finite_slack(lambda, grids);
      if (lambda == 0.0) {
        finish_finite(seg, Correspondence::full_product(1, grids.n_circle), "full_product");
      } else {
        finish_finite(seg, wrap_once(lambda, grids.m_grid + 1, grids.n_circle), "wrap_once");
      }
      break;
    }
    case Regime::B1: {
      const auto seg = segment_grid(lambda, grids);
      c.slack = finite_slack(lambda, grids);
      finish_finite(seg, wrap_triple(lambda, grids.m_grid + 1, grids.n_circle), "wrap_triple");
      break;
    }
    case Regime::B2:
      finish_pl(clip_to_length(plateau_template(grids), lambda), "clipped_plateau_pl");
      break;
    case Regime::C1: {
      std::string path;
      auto rel = validated_c1(lambda, grids, path);
      finish_pl(std::move(rel), path);
      break;
    }
    case Regime::C2: {
      const double step = kTwoPi / static_cast<double>(grids.n_circle);
      const double w = (lambda - kPi) / 2.0;
      const auto nw = static_cast<std::size_t>(std::ceil(w / step - 1e-9));
      const auto g = whisker_graph(lambda, grids.n_circle, std::max<std::size_t>(nw, 1));
      const auto corr = nearest_point_correspondence(g.space, g.segment(), g.circle());
      c.measured = distortion(corr.left, corr.right, corr.relation);
      c.relation = corr.relation;
      c.construction = "whisker_nearest_point";
      c.slack = step;
      break;
    }
  }

  if (c.measured / 2.0 > gh_formula(lambda) + c.slack) {
    throw Error(Errc::certificate_failed,
                "measured distortion " + std::to_string(c.measured) + " misses the target at lambda = " +
                    std::to_string(lambda));
  }
  return c;
}

double replay_measured(const SegmentCircleCertificate& c) {
  if (const auto* pl = std::get_if<PLCorrespondence>(&c.relation)) {
    return pl_distortion(*pl, c.grids.pl_step).value;
  }
  const auto& rel = std::get<Correspondence>(c.relation);
  const auto circle = circle_space(c.grids.n_circle);
  if (c.regime == Regime::C2) {
    const double step = kTwoPi / static_cast<double>(c.grids.n_circle);
    const auto nw = static_cast<std::size_t>(std::ceil((c.lambda - kPi) / 2.0 / step - 1e-9));
    const auto g = whisker_graph(c.lambda, c.grids.n_circle, std::max<std::size_t>(nw, 1));
    return distortion(subspace(g.space, g.segment()), subspace(g.space, g.circle()), rel);
  }
  return distortion(segment_grid(c.lambda, c.grids), circle, rel);
}

std::vector<BoundRecord> lower_bound_routes(double lambda, const Grids& grids) {
  if (!(lambda >= 0.0)) throw Error(Errc::negative_lambda, "lambda must be >= 0");
  const auto circle = circle_space(grids.n_circle);
  const auto seg = segment_grid(lambda, grids);
  std::vector<BoundRecord> routes;
  routes.push_back(round_lower(circle, seg));
  const auto alpha = antipodal_map(grids.n_circle);
  const auto c = c_heuristic(seg);
  routes.push_back(involution_lower(circle, alpha, seg, c.witness));
  routes.push_back(diam_diff_lower(seg, circle));
  return routes;
}

BoundRecord lower_bound(double lambda, const Grids& grids) {
  auto routes = lower_bound_routes(lambda, grids);
  std::size_t best = 0;
  for (std::size_t i = 1; i < routes.size(); ++i) {
    if (routes[i].value - routes[i].slack > routes[best].value - routes[best].slack) best = i;
  }
  return std::move(routes[best]);
}

bool RegimeReport::consistent() const noexcept {
  return lower.value - slack <= formula_value && formula_value <= upper.value + slack;
}

std::vector<RegimeReport> sweep(double lambda_min, double lambda_max, std::size_t steps, const Grids& grids) {
  if (!(lambda_min >= 0.0)) throw Error(Errc::negative_lambda, "lambda must be >= 0");
  if (!(lambda_max >= lambda_min)) throw Error(Errc::invalid_argument, "need lambda_min <= lambda_max");
  if (steps == 0) throw Error(Errc::invalid_argument, "need at least one step");
  // Build the shared template before the workers need it.
  (void)plateau_template(grids);

  std::vector<RegimeReport> rows(steps);
  parallel_for(steps, [&](std::size_t i) {
    const double lambda =
        steps == 1 ? lambda_min
                   : lambda_min + (lambda_max - lambda_min) * static_cast<double>(i) / static_cast<double>(steps - 1);
    auto& row = rows[i];
    row.lambda = lambda;
    row.formula_value = gh_formula(lambda);
    row.regime = regime_of(lambda);
    const auto cert = certificate(lambda, grids);
    row.upper = upper_record(cert);
    row.construction = cert.construction;
    row.lower = lower_bound(lambda, grids);
    row.slack = std::max(cert.slack, row.lower.slack);
  });
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<RegimeReport>& rows) {
  out << "lambda,formula,lower,upper,regime,slack\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%s,%.12g\n", r.lambda, r.formula_value,
                  r.lower.value, r.upper.value, to_string(r.regime), r.slack);
    out << buf;
  }
}

}  // namespace ghkit
