#include <cmath>
#include <random>

#include "doctest.h"
#include "ghkit/acceptance.hpp"
#include "ghkit/bounds.hpp"
#include "ghkit/error.hpp"
#include "ghkit/exact.hpp"
#include "ghkit/model_spaces.hpp"

using namespace ghkit;

namespace {

FiniteMetricSpace two_points(double d) { return validate_metric({{0, d}, {d, 0}}); }

double max_lower(const std::vector<BoundRecord>& rs) {
  double v = 0.0;
  for (const auto& r : rs)
    if (r.kind == BoundKind::lower) v = std::max(v, r.value);
  return v;
}

}  // namespace

TEST_CASE("single_point_rule") {
  CHECK(single_point_rule(FiniteMetricSpace::single_point()).value == 0.0);
  CHECK(single_point_rule(circle_space(10)).value == kPi / 2);
  CHECK(single_point_rule(segment_space(3.0, 4)).value == 1.5);
  CHECK(single_point_rule(circle_space(10)).kind == BoundKind::exact);
}

TEST_CASE("diam_diff_lower and max_diam_upper") {
  const auto c = circle_space(720);
  CHECK(diam_diff_lower(c, c).value == 0.0);
  CHECK(diam_diff_lower(c, c).vacuous);
  CHECK(diam_diff_lower(segment_space(2 * kPi, 721), c).value == doctest::Approx(kPi / 2));
  CHECK(diam_diff_lower(segment_space(3 * kPi, 721), c).value == doctest::Approx(kPi));

  const auto p = FiniteMetricSpace::single_point();
  CHECK(max_diam_upper(p, p).value == 0.0);
  const auto seg = segment_space(kPi, 11);
  const auto up = max_diam_upper(c, seg);
  CHECK(up.value == doctest::Approx(kPi / 2));
  CHECK(replay_certificate(up, c, seg));
}

TEST_CASE("homogeneity_lower") {
  std::mt19937_64 rng(41);
  const auto x = random_metric_space(rng, 5);
  CHECK(homogeneity_lower(x, x, 2).value == 0.0);
  const double lambda = 1.0;
  CHECK(homogeneity_lower(circle_space(8), segment_space(lambda, 11), 2).value ==
        doctest::Approx(kPi / 2 - lambda / 4));
  CHECK(homogeneity_lower(two_points(2), two_points(1), 2).value == doctest::Approx(0.5));

  // n = 3: two circles of different radii.
  const auto big = scale(circle_space(6), 2.0);
  const auto small = circle_space(6);
  const auto h3 = homogeneity_lower(big, small, 3);
  CHECK(h3.value >= 0.0);
  CHECK(h3.value <= gh_exact(big, small).value + 1e-12);
}

TEST_CASE("round_lower") {
  const auto c = circle_space(12);
  CHECK(round_lower(c, c).value == 0.0);
  CHECK(round_lower(c, segment_space(2 * kPi / 3, 721)).value == doctest::Approx(kPi / 3));
  CHECK(round_lower(c, FiniteMetricSpace::single_point()).value == doctest::Approx(kPi / 2));
  try {
    round_lower(segment_space(1.0, 3), c);
    FAIL("non-round space accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_round);
  }
  // Two circles scaled by b and a: (b - a) pi / 2.
  CHECK(round_lower(scale(c, 3.0), scale(c, 1.0)).value == doctest::Approx(kPi));
}

TEST_CASE("involution_lower") {
  const auto c = circle_space(720);
  const auto alpha = antipodal_map(720);
  const auto seg = segment_space(kPi, 721);
  std::vector<double> coords(721);
  for (std::size_t k = 0; k < 721; ++k) coords[k] = segment_coordinate(kPi, 721, k);
  const auto w = make_witness(seg, coords);
  const auto r = involution_lower(c, alpha, seg, w);
  CHECK(r.value == doctest::Approx(kPi / 3));
  CHECK(r.continuous_hypothesis);
  CHECK(r.slack == doctest::Approx(2 * kPi / 720));

  // c(Y) just below diam X.
  const auto small = circle_space(8);
  const double eps = 0.3;
  const auto two = two_points(kPi - eps);
  const auto near = involution_lower(small, antipodal_map(8), two, make_witness(two, {0.0, 0.0}));
  CHECK(near.value == doctest::Approx(eps / 3));

  // A stale claim: c(circle) = 0 with a constant witness.
  try {
    involution_lower(small, antipodal_map(8), small, LipschitzWitness{std::vector<double>(8, 0.0), 0.0});
    FAIL("stale witness accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::stale_certificate);
  }
  try {
    involution_lower(small, antipodal_map(8), small, make_witness(small, std::vector<double>(8, 0.0)));
    FAIL("c(Y) = diam X accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::c_exceeds_diameter);
  }
  std::vector<std::size_t> bad{1, 0, 3, 2, 5, 4, 7, 6};
  CHECK_THROWS_AS(involution_lower(small, bad, two, make_witness(two, {0.0, 0.0})), Error);
}

TEST_CASE("lipschitz_image_upper") {
  CHECK(lipschitz_image_upper(segment_space(4.0, 9)).value <= kDefaultOptTolerance);
  const auto c6 = circle_space(6);
  const auto r = lipschitz_image_upper(c6);
  CHECK(r.value <= kPi / 2 + kDefaultOptTolerance);
  const auto& cert = std::get<ImageCertificate>(r.certificate);
  const auto img = lipschitz_image(c6, cert.witness);
  CHECK(std::abs(distortion(c6, img.image, cert.graph) / 2 - r.value) <= 1e-12);
  CHECK(replay_certificate(r, c6, img.image));
}

TEST_CASE("best_bounds examples") {
  const auto p = FiniteMetricSpace::single_point();
  for (const auto& r : best_bounds(p, p)) CHECK(r.value == 0.0);

  const auto c = circle_space(720);
  const double slack = 2 * kPi / 720;
  CHECK(max_lower(best_bounds(c, segment_space(kPi, 721))) >= kPi / 3 - slack);
  CHECK(max_lower(best_bounds(c, segment_space(0.1, 721))) == doctest::Approx(kPi / 2 - 0.025));
}

TEST_CASE("best_bounds sandwich the exact distance on random pairs") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 200; ++t) {
    const auto x = random_metric_space(rng, 1 + rng() % 7);
    const auto y = random_metric_space(rng, 1 + rng() % 7);
    const auto rs = best_bounds(x, y);
    const double exact = gh_exact(x, y).value;
    for (const auto& r : rs) {
      CHECK(r.value >= 0.0);
      if (r.kind != BoundKind::upper) CHECK(r.value - r.slack <= exact + 1e-12);
      if (r.kind != BoundKind::lower) {
        CHECK(exact <= r.value + 1e-12);
        CHECK(replay_certificate(r, x, y));
      }
      // Records without the continuous hypothesis hold as stated.
      if (r.kind == BoundKind::lower && !r.continuous_hypothesis) CHECK(r.value <= exact + 1e-12);
    }
    for (std::size_t i = 1; i < rs.size(); ++i) CHECK_FALSE(rs[i].kind < rs[i - 1].kind);
  }
}

TEST_CASE("producers scale with the spaces") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 40; ++t) {
    const auto x = random_metric_space(rng, 2 + rng() % 5);
    const auto y = random_metric_space(rng, 2 + rng() % 5);
    for (double f : {0.5, 3.0}) {
      const auto xs = scale(x, f), ys = scale(y, f);
      CHECK(diam_diff_lower(xs, ys).value == doctest::Approx(f * diam_diff_lower(x, y).value).epsilon(1e-9));
      CHECK(max_diam_upper(xs, ys).value == doctest::Approx(f * max_diam_upper(x, y).value).epsilon(1e-9));
      CHECK(homogeneity_lower(xs, ys, 2).value == doctest::Approx(f * homogeneity_lower(x, y, 2).value).epsilon(1e-9));
      CHECK(homogeneity_lower(xs, ys, 3).value == doctest::Approx(f * homogeneity_lower(x, y, 3).value).epsilon(1e-9));
      if (is_round(x)) {
        CHECK(round_lower(xs, ys).value == doctest::Approx(f * round_lower(x, y).value).epsilon(1e-9));
        CHECK(homogeneity_lower(x, y, 2).value == doctest::Approx(round_lower(x, y).value));
      }
    }
  }
}

TEST_CASE("involution bound on circles vs segments stays near the exact distance") {
  for (std::size_t n : {4u, 6u}) {
    const auto c = circle_space(n);
    for (std::size_t m = 2; m <= 6; ++m) {
      for (double lambda : {0.5, 1.5, 3.0, 4.5}) {
        const auto seg = segment_space(lambda, m);
        std::vector<double> coords(m);
        for (std::size_t k = 0; k < m; ++k) coords[k] = segment_coordinate(lambda, m, k);
        const auto w = make_witness(seg, coords);
        if (!(w.objective < diameter(c))) continue;
        const auto r = involution_lower(c, antipodal_map(n), seg, w);
        const double step = lambda / static_cast<double>(m - 1);
        CHECK(r.value <= gh_exact(c, seg).value + 2 * kPi / static_cast<double>(n) + step);
      }
    }
  }
}
