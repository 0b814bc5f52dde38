#include "ghkit/plane_region.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "ghkit/error.hpp"
#include "ghkit/model_spaces.hpp"
#include "ghkit/parallel.hpp"

namespace ghkit {
namespace {

constexpr double kTwoPi = 2.0 * kPi;
constexpr double kBoundaryTolerance = 1e-9;

// Difference of canonical angles, folded so that |result| <= pi.
double folded_angle_difference(double phi0, double phi) {
  const double d = canonical_angle(phi) - canonical_angle(phi0);
  if (std::abs(d) <= kPi) return d;
  return d > 0.0 ? -(kTwoPi - d) : kTwoPi + d;
}

void require_covered(std::vector<std::pair<double, double>> intervals, double lo, double hi,
                     double step, const char* axis) {
  std::sort(intervals.begin(), intervals.end());
  double reach = lo;
  for (const auto& [a, b] : intervals) {
    if (a - reach > step) {
      throw Error(Errc::coverage_gap, std::string(axis) + "-projection misses (" + std::to_string(reach) +
                                          ", " + std::to_string(a) + ")");
    }
    reach = std::max(reach, b);
  }
  if (hi - reach > step) {
    throw Error(Errc::coverage_gap, std::string(axis) + "-projection misses (" + std::to_string(reach) +
                                        ", " + std::to_string(hi) + ")");
  }
}

}  // namespace

double canonical_angle(double phi) {
  double r = std::remainder(phi, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

double region_f(PlanePoint p0, PlanePoint p) {
  const double dt = std::abs(p.t - p0.t);
  const double dphi = std::abs(canonical_angle(p.phi) - canonical_angle(p0.phi));
  if (dphi <= kPi) return std::abs(dt - dphi);
  return std::abs(dt - (kTwoPi - dphi));
}

RegionParams::RegionParams(double a, PlanePoint center) : a_(a), center_(center) {
  if (!(a >= 0.0)) throw Error(Errc::invalid_argument, "region threshold must be >= 0");
}

bool region_contains(const RegionParams& params, PlanePoint p) {
  const double dt = p.t - params.center().t;
  const double dphi = folded_angle_difference(params.center().phi, p.phi);
  return std::abs(dt + dphi) <= params.a() || std::abs(dt - dphi) <= params.a();
}

bool geomcalc_check(std::span<const PlanePoint> points, double a) {
  for (const auto& c : points) {
    const RegionParams region(a, c);
    for (const auto& p : points) {
      if (!region_contains(region, p)) return false;
    }
  }
  return true;
}

PLCorrespondence::PLCorrespondence(double lambda, std::vector<PlaneSegment> segments)
    : lambda_(lambda), segments_(std::move(segments)) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw Error(Errc::negative_lambda, "lambda must be finite and >= 0");
  }
  const double t_max = lambda / 2.0 + kBoundaryTolerance;
  const double phi_max = kPi + kBoundaryTolerance;
  for (std::size_t s = 0; s < segments_.size(); ++s) {
    for (const PlanePoint& q : {segments_[s].from, segments_[s].to}) {
      if (!(std::abs(q.t) <= t_max && std::abs(q.phi) <= phi_max)) {
        throw Error(Errc::outside_rectangle,
                    "segment " + std::to_string(s) + " has endpoint (" + std::to_string(q.t) + ", " +
                        std::to_string(q.phi) + ") outside Q",
                    {s});
      }
    }
  }
}

PLCorrespondence PLCorrespondence::without(std::size_t index) const {
  auto segs = segments_;
  segs.erase(segs.begin() + static_cast<std::ptrdiff_t>(index));
  return PLCorrespondence(lambda_, std::move(segs));
}

std::vector<PlanePoint> pl_sample(const PLCorrespondence& p, double step) {
  if (!(step > 0.0)) throw Error(Errc::invalid_argument, "sampling step must be positive");
  if (p.segments().empty()) throw Error(Errc::coverage_gap, "relation has no segments");

  std::vector<std::pair<double, double>> t_cover;
  std::vector<std::pair<double, double>> phi_cover;
  std::vector<PlanePoint> out;
  for (const auto& s : p.segments()) {
    t_cover.emplace_back(std::min(s.from.t, s.to.t), std::max(s.from.t, s.to.t));
    phi_cover.emplace_back(std::min(s.from.phi, s.to.phi), std::max(s.from.phi, s.to.phi));
    const double len = std::hypot(s.to.t - s.from.t, s.to.phi - s.from.phi);
    std::size_t pieces = 1;
    while (len / static_cast<double>(pieces) > step) pieces *= 2;
    for (std::size_t k = 0; k <= pieces; ++k) {
      const double u = static_cast<double>(k) / static_cast<double>(pieces);
      out.push_back({s.from.t + (s.to.t - s.from.t) * u, s.from.phi + (s.to.phi - s.from.phi) * u});
    }
  }
  require_covered(std::move(t_cover), -p.lambda() / 2.0, p.lambda() / 2.0, step, "t");
  require_covered(std::move(phi_cover), -kPi, kPi, step, "phi");
  return out;
}

double pairwise_max_f(std::span<const PlanePoint> points) {
  std::vector<PlanePoint> canon(points.begin(), points.end());
  for (auto& q : canon) q.phi = canonical_angle(q.phi);
  return parallel_max(canon.size(), 0.0, [&](std::size_t i) {
    double m = 0.0;
    for (std::size_t j = i + 1; j < canon.size(); ++j) m = std::max(m, region_f(canon[i], canon[j]));
    return m;
  });
}

PLDistortion pl_distortion(const PLCorrespondence& p, double step) {
  const auto pts = pl_sample(p, step);
  return PLDistortion{pairwise_max_f(pts), 4.0 * step, pts.size()};
}

PLCorrespondence clip_to_length(const PLCorrespondence& p, double new_lambda) {
  if (!(new_lambda >= 0.0)) throw Error(Errc::negative_lambda, "lambda must be >= 0");
  const double half = new_lambda / 2.0;
  std::vector<PlaneSegment> out;
  for (const auto& s : p.segments()) {
    double lo = 0.0;
    double hi = 1.0;
    const double dt = s.to.t - s.from.t;
    // Keep the parameter range where |from.t + u dt| <= half.
    if (dt == 0.0) {
      if (std::abs(s.from.t) > half) continue;
    } else {
      const double u1 = (-half - s.from.t) / dt;
      const double u2 = (half - s.from.t) / dt;
      lo = std::max(lo, std::min(u1, u2));
      hi = std::min(hi, std::max(u1, u2));
      if (lo > hi) continue;
    }
    auto at = [&](double u) {
      PlanePoint q{s.from.t + dt * u, s.from.phi + (s.to.phi - s.from.phi) * u};
      q.t = std::clamp(q.t, -half, half);
      return q;
    };
    out.push_back({at(lo), at(hi), s.label});
  }
  return PLCorrespondence(new_lambda, std::move(out));
}

}  // namespace ghkit
