#include <cmath>
#include <random>

#include "doctest.h"
#include "ghkit/acceptance.hpp"
#include "ghkit/error.hpp"
#include "ghkit/exact.hpp"
#include "ghkit/model_spaces.hpp"
#include "ghkit/nonlinearity.hpp"
#include "oracles.hpp"

using namespace ghkit;

namespace {

double recompute(const FiniteMetricSpace& x, const std::vector<double>& v) {
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) worst = std::max(worst, x(i, j) - std::abs(v[i] - v[j]));
  return worst;
}

void check_witness(const FiniteMetricSpace& x, const LipschitzWitness& w) {
  REQUIRE(w.values.size() == x.size());
  CHECK(*std::min_element(w.values.begin(), w.values.end()) == 0.0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      CHECK(std::abs(w.values[i] - w.values[j]) <= x(i, j) + kDefaultLipschitzTolerance);
  CHECK(std::abs(recompute(x, w.values) - w.objective) <= 1e-12);
}

}  // namespace

TEST_CASE("objective") {
  CHECK(objective(FiniteMetricSpace::single_point(), std::vector<double>{0.0}) == 0.0);
  const auto seg = segment_space(3.0, 7);
  std::vector<double> coords;
  for (std::size_t k = 0; k < 7; ++k) coords.push_back(segment_coordinate(3.0, 7, k));
  CHECK(objective(seg, coords) <= 1e-12);
  CHECK(objective(circle_space(8), std::vector<double>(8, 0.0)) == kPi);
  try {
    objective(seg, std::vector<double>{0, 5, 0, 0, 0, 0, 0});
    FAIL("non-Lipschitz values accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_lipschitz);
    CHECK(e.indices().size() == 2);
  }
  CHECK_THROWS_AS(objective(seg, std::vector<double>{0, 1}), Error);
}

TEST_CASE("c_exact on segments, points and circles") {
  CHECK(c_exact(FiniteMetricSpace::single_point()).value == 0.0);
  for (std::size_t n = 2; n <= 8; ++n) CHECK(c_exact(segment_space(2.3, n)).value <= 1e-9);
  for (std::size_t n : {4u, 6u, 8u}) {
    const auto c = circle_space(n);
    const auto r = c_exact(c);
    CHECK(r.value >= kPi - 2 * kPi / static_cast<double>(n));
    CHECK(r.value <= kPi);
    CHECK(r.value <= diameter(c));
    check_witness(c, r.witness);
    const auto alpha = antipodal_map(n);
    std::vector<std::size_t> cycle(n);
    for (std::size_t k = 0; k < n; ++k) cycle[k] = k;
    const auto lb = antipodal_lower_bound(c, alpha, std::span<const std::size_t>(cycle));
    CHECK(lb.value <= r.value + 1e-9);
  }
  CHECK_THROWS_AS(c_exact(circle_space(9)), Error);
}

TEST_CASE("c_exact matches a grid-search oracle on three points") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 25; ++t) {
    const auto x = random_metric_space(rng, 3);
    const double h = diameter(x) / 400.0;
    const double exact = c_exact(x).value;
    const double grid = oracle::c_three_points(x, h);
    CHECK(exact <= grid + 1e-9);
    CHECK(grid <= exact + 3.0 * h);
  }
}

TEST_CASE("c_exact properties on random spaces") {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 30; ++t) {
    const auto x = random_metric_space(rng, 1 + rng() % 6);
    const auto r = c_exact(x);
    check_witness(x, r.witness);
    CHECK(r.value == r.witness.objective);
    CHECK(r.value <= diameter(x) + 1e-12);
    for (double f : {0.5, 2.0}) {
      CHECK(std::abs(c_exact(scale(x, f)).value - f * r.value) <= kDefaultOptTolerance * (1.0 + f) * 4);
    }
  }
}

TEST_CASE("c_heuristic") {
  CHECK(c_heuristic(segment_space(5.0, 200)).value <= kDefaultOptTolerance);
  const auto big = circle_space(100);
  const auto r = c_heuristic(big);
  CHECK(r.value <= kPi + kDefaultOptTolerance);
  check_witness(big, r.witness);

  // Determinism for a fixed seed.
  std::mt19937_64 rng(33);
  const auto x = random_metric_space(rng, 12);
  HeuristicNonlinearityOptions opts;
  opts.seed = 99;
  CHECK(c_heuristic(x, opts).witness.values == c_heuristic(x, opts).witness.values);

  for (int t = 0; t < 40; ++t) {
    const auto y = random_metric_space(rng, 1 + rng() % 7);
    const auto h = c_heuristic(y);
    check_witness(y, h.witness);
    CHECK(std::abs(h.value - c_exact(y).value) <= 1e-6);
  }
}

TEST_CASE("antipodal involutions") {
  const auto c = circle_space(6);
  CHECK_NOTHROW(validate_antipodal_involution(c, antipodal_map(6)));
  std::vector<std::size_t> bad{1, 0, 3, 2, 5, 4};
  try {
    validate_antipodal_involution(c, bad);
    FAIL("not antipodal");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_antipodal_involution);
  }
  CHECK(detect_antipodal_involution(c).has_value());
  CHECK_FALSE(detect_antipodal_involution(segment_space(1.0, 3)).has_value());

  std::vector<std::size_t> cycle4{0, 1, 2, 3};
  CHECK(antipodal_lower_bound(circle_space(4), antipodal_map(4), std::span<const std::size_t>(cycle4)).value ==
        doctest::Approx(kPi / 2));
  std::vector<std::size_t> cycle100(100);
  for (std::size_t k = 0; k < 100; ++k) cycle100[k] = k;
  CHECK(antipodal_lower_bound(circle_space(100), antipodal_map(100), std::span<const std::size_t>(cycle100)).value ==
        doctest::Approx(kPi - kPi / 50));

  const auto two = segment_space(1.0, 2);
  std::vector<std::size_t> swap{1, 0};
  std::vector<std::size_t> chain{0, 1};
  const auto vac = antipodal_lower_bound(two, swap, std::span<const std::size_t>(chain));
  CHECK(vac.value == 0.0);
  CHECK(vac.vacuous);
  const auto missing = antipodal_lower_bound(c, antipodal_map(6), std::nullopt);
  CHECK(missing.value == 0.0);
  CHECK(missing.missing_cycle);
}

TEST_CASE("lipschitz_image") {
  const auto seg = segment_space(2.0, 5);
  std::vector<double> coords;
  for (std::size_t k = 0; k < 5; ++k) coords.push_back(segment_coordinate(2.0, 5, k));
  const auto img = lipschitz_image(seg, make_witness(seg, coords));
  CHECK(img.image.size() == 5);
  CHECK(distortion(seg, img.image, img.graph) <= 1e-12);

  const auto c6 = circle_space(6);
  std::mt19937_64 rng(34);
  for (int t = 0; t < 20; ++t) {
    // Random 1-Lipschitz function: distance to a random point, scaled down.
    const std::size_t base = rng() % 6;
    const double s = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    std::vector<double> v(6);
    for (std::size_t i = 0; i < 6; ++i) v[i] = s * c6(base, i);
    const auto w = make_witness(c6, v);
    const auto im = lipschitz_image(c6, w);
    CHECK(distortion(c6, im.image, im.graph) == doctest::Approx(w.objective).epsilon(1e-12));
  }

  const auto flat = lipschitz_image(c6, make_witness(c6, std::vector<double>(6, 0.0)));
  CHECK(flat.image.size() == 1);
  CHECK(distortion(c6, flat.image, flat.graph) == kPi);
  try {
    lipschitz_image(c6, LipschitzWitness{{0, 9, 0, 0, 0, 0}, 0.0});
    FAIL("invalid witness accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_witness);
  }
}

TEST_CASE("d_GH(X, line image) <= c(X)/2") {
  std::mt19937_64 rng(35);
  for (int t = 0; t < 20; ++t) {
    const auto x = random_metric_space(rng, 1 + rng() % 6);
    const auto c = c_exact(x);
    const auto img = lipschitz_image(x, c.witness);
    CHECK(gh_exact(x, img.image).value <= c.value / 2 + kDefaultOptTolerance);
  }
}
