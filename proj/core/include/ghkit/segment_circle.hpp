#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "ghkit/bounds.hpp"
#include "ghkit/correspondence.hpp"
#include "ghkit/model_spaces.hpp"
#include "ghkit/plane_region.hpp"

namespace ghkit {

enum class Regime { A, B1, B2, C1, C2 };
const char* to_string(Regime r) noexcept;

/// Discretization used for I_lambda and S^1. m_grid counts segment
/// intervals, so the segment grid has m_grid + 1 points.
struct Grids {
  std::size_t n_circle = 720;
  std::size_t m_grid = 720;
  double pl_step = kPi / 720.0;
};

/// Closed-form d_GH(I_lambda, S^1).
double gh_formula(double lambda);

/// Breakpoints 2pi/3, 7pi/6, 5pi/3, 2pi; shared endpoints go to the lower
/// regime.
Regime regime_of(double lambda);

struct SegmentCircleCertificate {
  double lambda = 0.0;
  Regime regime = Regime::A;
  /// Finite relations are between segment_grid(lambda) (or the segment part of
  /// the whisker graph) and circle_space(n_circle).
  std::variant<Correspondence, PLCorrespondence> relation{Correspondence::full_product(1, 1)};
  double measured = 0.0;     // distortion (sampled for PL relations)
  double error_bound = 0.0;  // PL sampling error, 0 for finite relations
  double slack = 0.0;        // allowed excess of measured/2 over gh_formula
  std::string construction;
  Grids grids;
};

/// segment_space(lambda, m_grid + 1).
FiniteMetricSpace segment_grid(double lambda, const Grids& grids);

/// The anchored PL relation of the C1 family at `lambda` (5pi/3 <= lambda <= 3pi
/// keeps it inside Q). `with_connectors` adds the A-B / A'-B' segments.
PLCorrespondence anchored_pl(double lambda, bool with_connectors = true);

/// Regime-specific correspondence; throws CertificateFailed when the
/// measured distortion exceeds 2 gh_formula + 2 slack.
SegmentCircleCertificate certificate(double lambda, const Grids& grids = {});

/// Recomputes the distortion of a certificate from scratch.
double replay_measured(const SegmentCircleCertificate& c);

/// Every applicable lower-bound route at lambda, round route first.
std::vector<BoundRecord> lower_bound_routes(double lambda, const Grids& grids = {});

/// The largest of lower_bound_routes.
BoundRecord lower_bound(double lambda, const Grids& grids = {});

struct RegimeReport {
  double lambda = 0.0;
  double formula_value = 0.0;
  BoundRecord lower;
  BoundRecord upper;
  Regime regime = Regime::A;
  double slack = 0.0;
  std::string construction;

  bool consistent() const noexcept;
};

/// steps evenly spaced lambdas from lambda_min to lambda_max (inclusive),
/// computed in parallel, reported in lambda order.
std::vector<RegimeReport> sweep(double lambda_min, double lambda_max, std::size_t steps,
                                const Grids& grids = {});

void write_sweep_csv(std::ostream& out, const std::vector<RegimeReport>& rows);

}  // namespace ghkit
