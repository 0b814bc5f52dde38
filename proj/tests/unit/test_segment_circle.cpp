#include <cmath>
#include <sstream>

#include "doctest.h"
#include "ghkit/error.hpp"
#include "ghkit/parallel.hpp"
#include "ghkit/segment_circle.hpp"

using namespace ghkit;

namespace {
// Coarser grids keep the unit tests quick; acceptance runs the defaults.
const Grids kGrids{360, 360, kPi / 360};

double spec_slack(double lambda, const Grids& g) {
  return 4 * g.pl_step + 4 * kPi / static_cast<double>(g.n_circle) + 2 * lambda / static_cast<double>(g.m_grid);
}
}  // namespace

TEST_CASE("gh_formula") {
  CHECK(gh_formula(0.0) == kPi / 2);
  CHECK(gh_formula(kPi) == kPi / 3);
  CHECK(gh_formula(3 * kPi) == kPi);
  CHECK(gh_formula(2 * kPi / 3) == doctest::Approx(kPi / 3));
  CHECK(gh_formula(5 * kPi / 3) == doctest::Approx(kPi / 3));
  CHECK(kPi / 2 - (2 * kPi / 3) / 4 == doctest::Approx((5 * kPi / 3 - kPi) / 2));
  try {
    gh_formula(-0.1);
    FAIL("negative lambda accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::negative_lambda);
  }
}

TEST_CASE("regime_of breakpoints") {
  CHECK(regime_of(0.0) == Regime::A);
  CHECK(regime_of(2 * kPi / 3) == Regime::A);
  CHECK(regime_of(kPi) == Regime::B1);
  CHECK(regime_of(7 * kPi / 6) == Regime::B1);
  CHECK(regime_of(1.5 * kPi) == Regime::B2);
  CHECK(regime_of(5 * kPi / 3) == Regime::B2);
  CHECK(regime_of(1.9 * kPi) == Regime::C1);
  CHECK(regime_of(2 * kPi) == Regime::C1);
  CHECK(regime_of(2.5 * kPi) == Regime::C2);
}

TEST_CASE("certificate examples") {
  struct Case {
    double lambda;
    double half;
  };
  for (const auto& c : {Case{kPi / 3, kPi / 2 - kPi / 12}, Case{kPi, kPi / 3}, Case{11 * kPi / 6, 5 * kPi / 12},
                        Case{3 * kPi, kPi}}) {
    const auto cert = certificate(c.lambda, kGrids);
    CHECK(std::abs(cert.measured / 2 - c.half) <= cert.slack);
    CHECK(replay_measured(cert) == cert.measured);
  }
  CHECK(certificate(0.0, kGrids).construction == "full_product");
  CHECK(certificate(kPi, kGrids).construction == "wrap_triple");
  CHECK(certificate(1.5 * kPi, kGrids).construction == "clipped_plateau_pl");
  CHECK(certificate(1.9 * kPi, kGrids).construction == "anchored_pl");
  CHECK(certificate(2.5 * kPi, kGrids).construction == "whisker_nearest_point");
}

TEST_CASE("certificates track the formula on a grid over [0, 3pi]") {
  for (int i = 0; i < 100; i += 3) {
    const double lambda = 3 * kPi * i / 99.0;
    const auto cert = certificate(lambda, kGrids);
    const double gap = cert.measured / 2 - gh_formula(lambda);
    CHECK(std::abs(gap) <= cert.slack);
    CHECK(cert.slack <= spec_slack(lambda, kGrids));
  }
}

TEST_CASE("anchored relation reaches lambda - pi") {
  for (double lambda : {5 * kPi / 3, 11 * kPi / 6, 2 * kPi}) {
    const auto p = anchored_pl(lambda);
    const auto pts = pl_sample(p, kPi / 360);
    CHECK(geomcalc_check(pts, lambda - kPi + 1e-9));
    CHECK_FALSE(geomcalc_check(pts, lambda - kPi - 1e-6));
  }
  CHECK_THROWS_AS(anchored_pl(4.0), Error);
}

TEST_CASE("lower_bound routes") {
  const Grids g;
  CHECK(lower_bound(kPi / 2, g).value == doctest::Approx(kPi / 2 - kPi / 8).epsilon(1e-12));
  CHECK(lower_bound(kPi / 2, g).source == "round");
  const auto plateau = lower_bound(4 * kPi / 3, g);
  CHECK(plateau.source == "involution");
  CHECK(plateau.value >= kPi / 3 - plateau.slack);
  const auto high = lower_bound(5 * kPi / 2, g);
  CHECK(high.source == "diam_diff");
  CHECK(std::abs(high.value - 3 * kPi / 4) <= 2 * kPi / 720);

  // Tightness: exact on the round route below 2pi/3 and the diameter route
  // from 2pi on.
  for (double lambda : {0.0, 0.4, 1.1, 2 * kPi / 3}) {
    CHECK(std::abs(lower_bound_routes(lambda, g)[0].value - gh_formula(lambda)) <= 1e-12);
  }
  for (double lambda : {2 * kPi, 2.4 * kPi, 3 * kPi}) {
    CHECK(std::abs(lower_bound_routes(lambda, g)[2].value - gh_formula(lambda)) <= 1e-12);
  }
}

TEST_CASE("sweep invariants") {
  const auto rows = sweep(0.0, 3 * kPi, 31, kGrids);
  REQUIRE(rows.size() == 31);
  double lowest = 1e9;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    CHECK(r.consistent());
    CHECK(r.upper.value <= r.formula_value + r.slack);
    CHECK(r.lower.value >= r.formula_value - r.slack);
    lowest = std::min(lowest, r.formula_value);
    if (i > 0) {
      const auto& p = rows[i - 1];
      if (r.lambda <= 2 * kPi / 3) CHECK(r.formula_value <= p.formula_value);
      if (p.lambda >= 2 * kPi / 3 && r.lambda <= 5 * kPi / 3) CHECK(r.formula_value == p.formula_value);
      if (p.lambda >= 5 * kPi / 3) CHECK(r.formula_value > p.formula_value);
    }
    if (r.regime == Regime::B1 || r.regime == Regime::B2) {
      CHECK(std::abs(r.upper.value - kPi / 3) <= r.slack);
    }
  }
  CHECK(lowest == doctest::Approx(kPi / 3));

  // Formula column at the breakpoints.
  const auto pts = sweep(0.0, 0.0, 1, kGrids);
  CHECK(pts[0].formula_value == kPi / 2);
  for (double lambda : {2 * kPi / 3, 5 * kPi / 3, 2 * kPi}) {
    const auto one = sweep(lambda, lambda, 1, kGrids);
    CHECK(one[0].formula_value == doctest::Approx(lambda == 2 * kPi ? kPi / 2 : kPi / 3));
  }
}

TEST_CASE("sweep output does not depend on the thread count") {
  std::ostringstream a, b;
  set_max_threads(1);
  write_sweep_csv(a, sweep(0.5, 8.0, 7, kGrids));
  set_max_threads(4);
  write_sweep_csv(b, sweep(0.5, 8.0, 7, kGrids));
  set_max_threads(0);
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("lambda,formula,lower,upper,regime,slack\n", 0) == 0);
}
