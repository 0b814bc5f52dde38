#include "ghkit/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "ghkit/error.hpp"

namespace ghkit {
namespace {

BoundRecord lower_record(std::string source, double raw, std::vector<BoundParam> params) {
  BoundRecord r;
  r.kind = BoundKind::lower;
  r.source = std::move(source);
  r.params = std::move(params);
  if (raw > 0.0) {
    r.value = raw;
  } else {
    r.value = 0.0;
    r.vacuous = true;
  }
  return r;
}

std::vector<double> distinct_distances(const FiniteMetricSpace& x) {
  std::vector<double> v;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) v.push_back(x(i, j));
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

/// Largest b among the distance values for which x is (b,n)-homogeneous;
/// homogeneity is monotone in b. 0 when there is none.
double homogeneity_threshold(const FiniteMetricSpace& x, std::size_t n) {
  const auto values = distinct_distances(x);
  for (auto it = values.rbegin(); it != values.rend(); ++it) {
    if (is_homogeneous(x, *it, n)) return *it;
  }
  return 0.0;
}

}  // namespace

const char* to_string(BoundKind kind) noexcept {
  switch (kind) {
    case BoundKind::lower: return "lower";
    case BoundKind::exact: return "exact";
    case BoundKind::upper: return "upper";
  }
  return "unknown";
}

BoundRecord single_point_rule(const FiniteMetricSpace& y) {
  BoundRecord r;
  r.kind = BoundKind::exact;
  r.value = diameter(y) / 2.0;
  r.source = "single_point";
  r.params = {{"diam_y", diameter(y)}};
  r.certificate = Correspondence::full_product(1, y.size());
  return r;
}

BoundRecord diam_diff_lower(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  const double dx = diameter(x);
  const double dy = diameter(y);
  return lower_record("diam_diff", std::abs(dx - dy) / 2.0, {{"diam_x", dx}, {"diam_y", dy}});
}

BoundRecord max_diam_upper(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  BoundRecord r;
  r.kind = BoundKind::upper;
  r.value = std::max(diameter(x), diameter(y)) / 2.0;
  r.source = "max_diam";
  r.params = {{"diam_x", diameter(x)}, {"diam_y", diameter(y)}};
  r.certificate = Correspondence::full_product(x.size(), y.size());
  return r;
}

BoundRecord homogeneity_lower(const FiniteMetricSpace& x, const FiniteMetricSpace& y, std::size_t n) {
  if (n < 2) throw Error(Errc::invalid_argument, "homogeneity bound needs n >= 2");
  double b = 0.0;
  double a = 0.0;
  if (n == 2) {
    b = min_eccentricity(x);
    a = min_eccentricity(y);
  } else {
    b = homogeneity_threshold(x, n);
    a = homogeneity_threshold(y, n);
  }
  auto r = lower_record("homogeneity", (b - a) / 2.0,
                        {{"n", static_cast<double>(n)}, {"b", b}, {"a", a}});
  if (b <= 0.0) r.vacuous = true;
  return r;
}

BoundRecord round_lower(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  if (!is_round(x)) throw Error(Errc::not_round, "first space is not round");
  const double dx = diameter(x);
  const double ey = min_eccentricity(y);
  return lower_record("round", (dx - ey) / 2.0, {{"diam_x", dx}, {"min_ecc_y", ey}});
}

BoundRecord involution_lower(const FiniteMetricSpace& x, std::span<const std::size_t> alpha,
                             const FiniteMetricSpace& y, const LipschitzWitness& y_witness) {
  validate_antipodal_involution(x, alpha);
  double replayed = 0.0;
  try {
    replayed = objective(y, y_witness.values);
  } catch (const Error& e) {
    throw Error(Errc::stale_certificate, std::string("witness does not verify: ") + e.what());
  }
  if (replayed > y_witness.objective + kDefaultLipschitzTolerance) {
    throw Error(Errc::stale_certificate, "witness objective " + std::to_string(replayed) +
                                             " exceeds the claimed " + std::to_string(y_witness.objective));
  }
  const double c = y_witness.objective;
  const double dx = diameter(x);
  if (!(c < dx)) throw Error(Errc::c_exceeds_diameter, "c(Y) bound is not below diam X");

  auto r = lower_record("involution", (dx - c) / 3.0, {{"diam_x", dx}, {"c_y", c}});
  r.continuous_hypothesis = true;
  r.slack = mesh_width(x);
  r.certificate = y_witness;
  return r;
}

BoundRecord lipschitz_image_upper(const FiniteMetricSpace& x, std::size_t exact_limit) {
  auto c = c_upper(x, exact_limit);
  auto image = lipschitz_image(x, c.witness);
  BoundRecord r;
  r.kind = BoundKind::upper;
  r.value = distortion(x, image.image, image.graph) / 2.0;
  r.source = "lipschitz_image";
  r.params = {{"c_upper", c.value}, {"image_points", static_cast<double>(image.image.size())}};
  r.certificate = ImageCertificate{std::move(c.witness), std::move(image.graph)};
  return r;
}

std::vector<BoundRecord> best_bounds(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                                     const BoundsOptions& opts) {
  std::vector<BoundRecord> out;
  if (x.size() == 1) out.push_back(single_point_rule(y));
  if (y.size() == 1 && x.size() != 1) {
    auto r = single_point_rule(x);
    r.certificate = Correspondence::full_product(x.size(), 1);
    out.push_back(std::move(r));
  }
  out.push_back(diam_diff_lower(x, y));
  out.push_back(max_diam_upper(x, y));

  for (const bool swapped : {false, true}) {
    const auto& a = swapped ? y : x;
    const auto& b = swapped ? x : y;
    auto h2 = homogeneity_lower(a, b, 2);
    h2.params.push_back({"swapped", swapped ? 1.0 : 0.0});
    out.push_back(std::move(h2));
    if (a.size() <= opts.homogeneity_n3_limit && b.size() <= opts.homogeneity_n3_limit) {
      auto h3 = homogeneity_lower(a, b, 3);
      h3.params.push_back({"swapped", swapped ? 1.0 : 0.0});
      out.push_back(std::move(h3));
    }
    if (is_round(a)) {
      auto r = round_lower(a, b);
      r.params.push_back({"swapped", swapped ? 1.0 : 0.0});
      out.push_back(std::move(r));
    }

    std::optional<std::vector<std::size_t>> alpha = swapped ? opts.involution_y : opts.involution_x;
    if (!alpha && opts.auto_involution) alpha = detect_antipodal_involution(a);
    if (!alpha) continue;
    const auto& supplied = swapped ? opts.witness_x : opts.witness_y;
    LipschitzWitness w = supplied ? *supplied : c_upper(b, opts.exact_c_limit).witness;
    if (!(w.objective < diameter(a))) continue;
    auto r = involution_lower(a, *alpha, b, w);
    r.params.push_back({"swapped", swapped ? 1.0 : 0.0});
    out.push_back(std::move(r));
  }

  std::stable_sort(out.begin(), out.end(), [](const BoundRecord& l, const BoundRecord& r) {
    return std::tie(l.kind, l.value, l.source) < std::tie(r.kind, r.value, r.source);
  });

  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  for (const auto& r : out) {
    if (r.kind != BoundKind::upper) lo = std::max(lo, r.value - r.slack);
    if (r.kind != BoundKind::lower) hi = std::min(hi, r.value);
  }
  if (lo > hi + 1e-9 * (1.0 + hi)) {
    throw Error(Errc::inconsistent_bounds,
                "lower bound " + std::to_string(lo) + " exceeds upper bound " + std::to_string(hi));
  }
  return out;
}

bool replay_certificate(const BoundRecord& r, const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  constexpr double kReplayTolerance = 1e-12;
  if (const auto* c = std::get_if<Correspondence>(&r.certificate)) {
    if (c->left_size() != x.size() || c->right_size() != y.size()) return false;
    return distortion(x, y, *c) / 2.0 <= r.value + kReplayTolerance;
  }
  if (const auto* ic = std::get_if<ImageCertificate>(&r.certificate)) {
    const auto image = lipschitz_image(x, ic->witness);
    if (!(image.graph == ic->graph)) return false;
    return std::abs(distortion(x, image.image, image.graph) / 2.0 - r.value) <= kReplayTolerance;
  }
  if (const auto* pl = std::get_if<PLCorrespondence>(&r.certificate)) {
    const auto step = std::find_if(r.params.begin(), r.params.end(),
                                   [](const BoundParam& p) { return p.name == "pl_step"; });
    if (step == r.params.end()) return false;
    const auto d = pl_distortion(*pl, step->value);
    return d.value / 2.0 <= r.value + kReplayTolerance;
  }
  return r.kind == BoundKind::lower;
}

}  // namespace ghkit
