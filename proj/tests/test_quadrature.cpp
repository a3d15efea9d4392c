#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "orliczcorr/budget_volume.hpp"
#include "orliczcorr/cross_section.hpp"
#include "orliczcorr/errors.hpp"
#include "orliczcorr/quadrature.hpp"
#include "orliczcorr/test_bodies.hpp"

using namespace orliczcorr;

TEST_CASE("Gauss-Legendre is exact through degree 2n-1") {
  for (std::size_t n : {2u, 5u, 12u, 24u}) {
    const auto& rule = gauss_legendre(n);
    REQUIRE(rule.nodes.size() == n);
    for (std::size_t deg = 0; deg < 2 * n; deg += 2) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += rule.weights[k] * std::pow(rule.nodes[k], static_cast<double>(deg));
      CHECK(s == doctest::Approx(2.0 / (static_cast<double>(deg) + 1.0)).epsilon(1e-13));
    }
  }
}

TEST_CASE("adaptive Gauss-Kronrod on an endpoint singularity") {
  AdaptiveOptions opt;
  opt.rel_tol = 1e-11;
  const auto r = integrate_adaptive_scalar([](double x) { return std::sqrt(x); }, 0.0, 1.0, opt);
  CHECK(r.converged);
  CHECK(r.value[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("adaptive integration honours breaks and vector integrands") {
  AdaptiveOptions opt;
  opt.rel_tol = 1e-12;
  const double brk[] = {0.3};
  auto f = [](double x) { return Vec<2>{std::abs(x - 0.3), x * x}; };
  const auto r = integrate_adaptive<2>(f, 0.0, 1.0, opt, brk);
  CHECK(r.value[0] == doctest::Approx(0.5 * (0.09 + 0.49)).epsilon(1e-13));
  CHECK(r.value[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(r.intervals == 2);
}

TEST_CASE("non-convergence is reported") {
  AdaptiveOptions opt;
  opt.rel_tol = 1e-15;
  opt.max_intervals = 3;
  const auto r = integrate_adaptive_scalar([](double x) { return std::sin(200.0 * x); }, 0.0, 10.0, opt);
  CHECK_FALSE(r.converged);
}

TEST_CASE("edge map tames decay at the right end") {
  AdaptiveOptions opt;
  opt.rel_tol = 1e-12;
  auto f = [](double t) { return Vec<1>{std::pow(1.0 - t, 1.5)}; };
  const auto r = integrate_to_edge<1>(f, 1.0, {}, opt);
  CHECK(r.value[0] == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(integrate_to_edge<1>(f, 0.0, {}, opt).value[0] == 0.0);
}

TEST_CASE("smoothstep-composed pieces") {
  CHECK(smoothstep5(0.0) == 0.0);
  CHECK(smoothstep5(1.0) == doctest::Approx(1.0));
  CHECK(smoothstep5(0.5) == doctest::Approx(0.5));
  const double v = integrate_pieces([](double t) { return std::sqrt(t * (1.0 - t)); }, 0.0, 1.0, {}, 24, true);
  CHECK(v == doctest::Approx(std::numbers::pi / 8.0).epsilon(1e-8));
}

TEST_CASE("budget volume of l_p balls matches the Dirichlet formula") {
  for (double p : {1.0, 1.5, 2.0, 3.0, 6.0})
    for (std::size_t n = 1; n <= 5; ++n) {
      std::vector<ScaledYoung> coords(n, ScaledYoung(YoungFunction::power(p), 1.0));
      const BudgetVolume v(coords);
      CHECK(v(1.0) == doctest::Approx(oracle::lp_ball_volume(p, n)).epsilon(1e-12));
      CHECK(v(0.3) == doctest::Approx(std::pow(0.3, static_cast<double>(n) / p) * v(1.0)).epsilon(1e-12));
      CHECK(v(-0.1) == 0.0);
    }
}

TEST_CASE("recursion agrees with the closed form") {
  QuadratureOptions opt;
  opt.closed_form_power_groups = false;
  opt.rel_tol = 1e-10;
  for (double p : {1.0, 2.0, 3.0}) {
    std::vector<ScaledYoung> coords(3, ScaledYoung(YoungFunction::power(p), 1.0));
    const BudgetVolume v(coords, opt);
    CHECK(v(1.0) == doctest::Approx(oracle::lp_ball_volume(p, 3)).epsilon(1e-8));
  }
}

TEST_CASE("scales multiply the volume") {
  std::vector<ScaledYoung> coords{ScaledYoung(YoungFunction::power(2.0), 2.0),
                                  ScaledYoung(YoungFunction::power(2.0), 0.5),
                                  ScaledYoung(YoungFunction::exp_poly(), 3.0)};
  std::vector<ScaledYoung> unit{ScaledYoung(YoungFunction::power(2.0), 1.0),
                                ScaledYoung(YoungFunction::power(2.0), 1.0),
                                ScaledYoung(YoungFunction::exp_poly(), 1.0)};
  CHECK(BudgetVolume(coords)(0.7) == doctest::Approx(3.0 * BudgetVolume(unit)(0.7)).epsilon(1e-8));
}

TEST_CASE("exp-poly and piecewise-linear volumes against one-dimensional oracles") {
  const auto e = YoungFunction::exp_poly();
  const double r = 0.8;
  CHECK(BudgetVolume({ScaledYoung(e, 1.0)})(r) == doctest::Approx(2.0 * e.inverse(r)).epsilon(1e-12));

  const double top = e.inverse(r);
  const double area = 4.0 * oracle::simpson([&](double t) { return e.inverse(std::max(0.0, r - e(t))); }, 0.0, top,
                                            200000);
  CHECK(BudgetVolume({ScaledYoung(e, 1.0), ScaledYoung(e, 1.0)})(r) == doctest::Approx(area).epsilon(1e-6));

  const auto pw = YoungFunction::piecewise_linear({{0, 0}, {0.5, 0.25}, {1, 1}, {2, 3}});
  const double ptop = pw.inverse(r);
  const double parea =
      4.0 * oracle::simpson([&](double t) { return std::sqrt(std::max(0.0, r - pw(t))); }, 0.0, ptop, 200000);
  const BudgetVolume mixed({ScaledYoung(pw, 1.0), ScaledYoung(YoungFunction::power(2.0), 1.0)});
  CHECK(mixed(r) == doctest::Approx(parea).epsilon(1e-6));
  CHECK(mixed.closed_form());
}

TEST_CASE("budget volume kinks of a single piecewise coordinate") {
  const auto pw = YoungFunction::piecewise_linear({{0, 0}, {0.5, 0.25}, {1, 1}, {2, 3}});
  const BudgetVolume v({ScaledYoung(pw, 1.0)});
  const auto k = v.kinks();
  REQUIRE(k.size() == 1);
  CHECK(k[0] == doctest::Approx(0.25));
}

TEST_CASE("budget refusals") {
  std::vector<ScaledYoung> big(9, ScaledYoung(YoungFunction::power(2.0), 1.0));
  CHECK_THROWS_AS(BudgetVolume{big}, BudgetError);

  QuadratureOptions tight;
  tight.max_evaluations = 50;
  std::vector<ScaledYoung> hard(4, ScaledYoung(YoungFunction::exp_poly(), 1.0));
  CHECK_THROWS_AS(BudgetVolume(hard, tight)(0.9), BudgetError);
}

TEST_CASE("memoization") {
  std::vector<ScaledYoung> coords(3, ScaledYoung(YoungFunction::exp_poly(), 1.0));
  const BudgetVolume v(coords);
  const double a = v(0.5);
  const double b = v(0.5);
  CHECK(a == b);
  CHECK(v.compute(0.5) == a);
  const auto s = v.cache_stats();
  CHECK(s.hits >= 1);
  CHECK(s.entries >= 1);
}

TEST_CASE("cross sections against closed forms") {
  const CrossSection l1(BodyModel{lp_ball(1.0, 3)}, 0, 1);
  CHECK(l1(0.2, 0.3) == doctest::Approx(2.0 * 0.5));
  CHECK(l1(-0.2, 0.3) == doctest::Approx(1.0));
  CHECK(l1(0.6, 0.5) == 0.0);
  CHECK(l1.y_extent(0.25) == doctest::Approx(0.75));

  const CrossSection l2(BodyModel{lp_ball(2.0, 3)}, 1, 2);
  CHECK(l2(0.3, 0.4) == doctest::Approx(2.0 * std::sqrt(1.0 - 0.25)));

  const CrossSection l24(BodyModel{lp_ball(2.0, 4)}, 0, 3);
  CHECK(l24(0.3, 0.4) == doctest::Approx(std::numbers::pi * 0.75));

  const CrossSection n2(BodyModel{lp_ball(2.0, 2)}, 0, 1);
  CHECK(n2(0.3, 0.4) == 1.0);
  CHECK(n2(0.8, 0.8) == 0.0);
}

TEST_CASE("counterexample cross sections") {
  const BodyModel c = CounterexampleBody{};
  const CrossSection yz(c, 1, 2);
  const CrossSection xy(c, 0, 1);
  const CrossSection yx(c, 1, 0);
  for (double y : {0.0, 0.2, 0.7})
    for (double z : {0.1, 0.5, 0.9}) {
      CHECK(yz(y, z) == doctest::Approx(oracle::counterexample_m(y, z)));
      const double expect = y + z <= 1.0 ? 2.0 * (1.0 - y) : 0.0;
      CHECK(xy(y, z) == doctest::Approx(expect));
      CHECK(yx(z, y) == doctest::Approx(expect));
    }
  CHECK(total_volume(c) == doctest::Approx(8.0 / 3.0));
}

TEST_CASE("cross-section contract and budget") {
  CHECK_THROWS_AS(CrossSection(BodyModel{lp_ball(2.0, 3)}, 1, 1), ContractError);
  CHECK_THROWS_AS(CrossSection(BodyModel{lp_ball(2.0, 3)}, 0, 3), ContractError);
  CHECK_THROWS_AS(CrossSection(BodyModel{lp_ball(2.0, 9)}, 0, 1), BudgetError);
  CHECK(total_volume(BodyModel{lp_ball(1.0, 4)}) == doctest::Approx(16.0 / 24.0));
}

TEST_CASE("kinks and breaks of piecewise slices lie inside the support") {
  const CrossSection cs(BodyModel{piecewise_ball(3)}, 0, 1);
  for (double z : {0.0, 0.3, 0.8}) {
    const double top = cs.y_extent(z);
    for (double k : cs.y_kinks(z)) {
      CHECK(k > 0.0);
      CHECK(k < top);
    }
  }
  const double levels[] = {0.2, 0.5};
  for (double b : cs.y_breaks(levels)) {
    CHECK(b > 0.0);
    CHECK(b < cs.y_max());
  }
}
