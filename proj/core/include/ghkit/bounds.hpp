#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ghkit/correspondence.hpp"
#include "ghkit/metric_space.hpp"
#include "ghkit/nonlinearity.hpp"
#include "ghkit/plane_region.hpp"

namespace ghkit {

enum class BoundKind { lower, exact, upper };
const char* to_string(BoundKind kind) noexcept;

/// Witness together with the graph correspondence onto its line image.
struct ImageCertificate {
  LipschitzWitness witness;
  Correspondence graph;
};

using Certificate =
    std::variant<std::monostate, Correspondence, LipschitzWitness, ImageCertificate, PLCorrespondence>;

struct BoundParam {
  std::string name;
  double value;
};

/// One certified statement about d_GH. Upper and exact records carry a
/// replayable certificate.
struct BoundRecord {
  BoundKind kind = BoundKind::lower;
  double value = 0.0;
  std::string source;
  std::vector<BoundParam> params;
  Certificate certificate;
  /// The formula was <= 0 and the record was set to 0.
  bool vacuous = false;
  /// The bound is proven for connected spaces; on a discretization it
  /// holds only up to `slack`.
  bool continuous_hypothesis = false;
  double slack = 0.0;
};

/// d_GH(point, Y) = diam Y / 2.
BoundRecord single_point_rule(const FiniteMetricSpace& y);

/// |diam X - diam Y| / 2 <= d_GH.
BoundRecord diam_diff_lower(const FiniteMetricSpace& x, const FiniteMetricSpace& y);

/// d_GH <= max(diam X, diam Y) / 2, certified by the full product.
BoundRecord max_diam_upper(const FiniteMetricSpace& x, const FiniteMetricSpace& y);

/// If X is (b,n)-homogeneous and Y is not (a,n)-homogeneous with a < b, then
/// 2 d_GH >= b - a. For n = 2 the supremum over (b, a) is
/// min_ecc X - min_ecc Y; for n > 2 the thresholds are scanned over the
/// distinct distance values of each space.
BoundRecord homogeneity_lower(const FiniteMetricSpace& x, const FiniteMetricSpace& y, std::size_t n);

/// X round: 2 d_GH >= diam X - min_ecc Y. Throws NotRound.
BoundRecord round_lower(const FiniteMetricSpace& x, const FiniteMetricSpace& y);

/// X with an antipodal involution, Y with c(Y) <= c: d_GH >= (diam X - c)/3.
/// c is taken from the witness after re-evaluating it on Y (StaleCertificate
/// when the claimed objective does not hold). The record is flagged
/// `continuous_hypothesis` with slack = mesh_width(X).
BoundRecord involution_lower(const FiniteMetricSpace& x, std::span<const std::size_t> alpha,
                             const FiniteMetricSpace& y, const LipschitzWitness& y_witness);

/// d_GH(X, Z) <= c/2 where Z is the line image of the best available
/// witness. Note this bounds X against Z, not against another input.
BoundRecord lipschitz_image_upper(const FiniteMetricSpace& x, std::size_t exact_limit = 8);

struct BoundsOptions {
  bool auto_involution = true;
  std::optional<std::vector<std::size_t>> involution_x;
  std::optional<std::vector<std::size_t>> involution_y;
  std::optional<LipschitzWitness> witness_x;
  std::optional<LipschitzWitness> witness_y;
  std::size_t exact_c_limit = 8;
  /// homogeneity_lower with n = 3 runs when both spaces are at most this big.
  std::size_t homogeneity_n3_limit = 32;
};

/// All applicable producers for the pair, sorted by kind, then value, then
/// source. Throws InconsistentBounds if some lower bound (less its slack)
/// exceeds some upper bound.
std::vector<BoundRecord> best_bounds(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                                     const BoundsOptions& opts = {});

/// Replays the certificate of an upper/exact record: distortion/2 <= value.
/// PL certificates are resampled at the record's "pl_step" parameter and
/// compared against value + error_bound/2. Lower records replay trivially.
bool replay_certificate(const BoundRecord& r, const FiniteMetricSpace& x, const FiniteMetricSpace& y);

}  // namespace ghkit
