#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ghkit {

/// A point (t, phi) of the parameter rectangle Q = [-L/2, L/2] x [-pi, pi]:
/// t is the segment coordinate, phi the circle angle.
struct PlanePoint {
  double t = 0.0;
  double phi = 0.0;
};

/// Representative of `phi` modulo 2 pi in (-pi, pi].
double canonical_angle(double phi);

/// Discrepancy between the segment distance |t - t0| and the circle distance
/// of the two angles:
///   | |dt| - |dphi| |          if |dphi| <= pi
///   | |dt| - 2pi + |dphi| |    otherwise,
/// where dphi is the difference of the canonical angles.
double region_f(PlanePoint p0, PlanePoint p);

/// Threshold `a` and the centre of the region D_a(center).
class RegionParams {
 public:
  RegionParams(double a, PlanePoint center);
  double a() const noexcept { return a_; }
  PlanePoint center() const noexcept { return center_; }

 private:
  double a_;
  PlanePoint center_;
};

/// Membership in D_a(center), decided geometrically: after unwrapping the
/// angle difference to [-pi, pi], the region is the union of the two
/// diagonal bands |dt + dphi| <= a and |dt - dphi| <= a.
bool region_contains(const RegionParams& params, PlanePoint p);

/// True iff every point of `points` lies in D_a(c) for every centre c taken
/// from `points` (a relation with distortion <= a).
bool geomcalc_check(std::span<const PlanePoint> points, double a);

struct PlaneSegment {
  PlanePoint from;
  PlanePoint to;
  std::string label;
};

/// A piecewise-linear relation between a segment of length `lambda` and the
/// circle, drawn as a union of line segments inside Q.
class PLCorrespondence {
 public:
  /// Throws OutsideRectangle when an endpoint leaves Q.
  PLCorrespondence(double lambda, std::vector<PlaneSegment> segments);

  double lambda() const noexcept { return lambda_; }
  const std::vector<PlaneSegment>& segments() const noexcept { return segments_; }

  /// Same relation without segment `index` (a subgraph).
  PLCorrespondence without(std::size_t index) const;

 private:
  double lambda_;
  std::vector<PlaneSegment> segments_;
};

/// Points spaced at most `step` apart along every segment, endpoints
/// included. Each segment is split into a power-of-two number of pieces, so
/// the sample for step/2 contains the sample for step. Throws CoverageGap if
/// a t- or phi-interval wider than `step` is left uncovered.
std::vector<PlanePoint> pl_sample(const PLCorrespondence& p, double step);

struct PLDistortion {
  double value = 0.0;        // max of region_f over sampled pairs
  double error_bound = 0.0;  // true distortion <= value + error_bound
  std::size_t samples = 0;
};

PLDistortion pl_distortion(const PLCorrespondence& p, double step);

/// Largest region_f over all pairs of `points` (brute force).
double pairwise_max_f(std::span<const PlanePoint> points);

/// Restriction of `p` to the strip |t| <= new_lambda / 2, as a relation for
/// the shorter segment. Segments entirely outside are dropped.
PLCorrespondence clip_to_length(const PLCorrespondence& p, double new_lambda);

}  // namespace ghkit
