#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "orliczcorr/correlation.hpp"
#include "orliczcorr/errors.hpp"
#include "orliczcorr/test_bodies.hpp"
#include "orliczcorr/test_functions.hpp"

using namespace orliczcorr;

namespace {

const UnivariateTestFn sq = UnivariateTestFn::square();

}  // namespace

TEST_CASE("test functions") {
  CHECK(sq(-3.0) == 9.0);
  CHECK(UnivariateTestFn::even_power(2)(2.0) == doctest::Approx(16.0));
  CHECK(UnivariateTestFn::abs()(-0.5) == 0.5);
  CHECK(UnivariateTestFn::constant(2.5)(7.0) == 2.5);
  CHECK_THROWS_AS(UnivariateTestFn::even_power(0), DomainError);

  const auto tab = UnivariateTestFn::tabulated({{0, 0}, {1, 2}, {2, 3}});
  CHECK(tab(0.5) == doctest::Approx(1.0));
  CHECK(tab(-1.5) == doctest::Approx(2.5));
  CHECK(tab(10.0) == doctest::Approx(3.0));
  CHECK(tab.monotone());
  CHECK(tab.kinks() == std::vector<double>{1.0, 2.0});

  const auto bump = UnivariateTestFn::tabulated({{0, 1}, {1, 0}});
  CHECK_FALSE(bump.monotone());
  CHECK_THROWS_AS(UnivariateTestFn::tabulated({{-1, 2}, {0, 0}, {1, 1}}), ContractError);
  CHECK_NOTHROW(UnivariateTestFn::tabulated({{-1, 1}, {0, 0}, {1, 1}}));
}

TEST_CASE("test function JSON") {
  for (const auto& f : {sq, UnivariateTestFn::abs(), UnivariateTestFn::even_power(3), UnivariateTestFn::constant(2.0),
                        UnivariateTestFn::tabulated({{0, 0}, {0.5, 1}, {1, 1.5}})}) {
    const auto back = UnivariateTestFn::from_json(nlohmann::json::parse(f.to_json().dump()));
    CHECK(back.describe() == f.describe());
    for (double t : {0.0, 0.3, 0.9, 2.0}) CHECK(back(t) == f(t));
  }
  CHECK_THROWS_AS(UnivariateTestFn::from_json(nlohmann::json::parse(R"({"family": "cube"})")), ConfigError);
  CHECK_THROWS_AS(UnivariateTestFn::from_json(nlohmann::json::parse(R"({"family": "square", "k": 2})")),
                  ConfigError);
}

TEST_CASE("direct covariance against Dirichlet and ball moments") {
  {
    const CrossSection cs(BodyModel{lp_ball(1.0, 3)}, 0, 1);
    const auto d = cov_direct(cs, sq, sq);
    CHECK(d.converged);
    CHECK(d.volume == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(d.mean_f == doctest::Approx(oracle::l1_moment(3, 2.0)).epsilon(1e-10));
    CHECK(d.cov == doctest::Approx(oracle::l1_cov_sq(3)).epsilon(1e-9));
  }
  {
    const CrossSection cs(BodyModel{lp_ball(1.0, 4)}, 1, 3);
    CHECK(cov_direct(cs, sq, sq).cov == doctest::Approx(oracle::l1_cov_sq(4)).epsilon(1e-9));
  }
  for (std::size_t n : {3u, 4u, 5u}) {
    const CrossSection cs(BodyModel{lp_ball(2.0, n)}, 0, 1);
    CHECK(cov_direct(cs, sq, sq).cov == doctest::Approx(oracle::l2_cov_sq(n)).epsilon(1e-9));
  }
}

TEST_CASE("formula route equals |K|^2 cov") {
  for (const auto& body : {lp_ball(1.0, 3), lp_ball(2.0, 3), lp_ball(3.0, 4)}) {
    const CrossSection cs(BodyModel{body}, 0, 1);
    const auto d = cov_direct(cs, sq, sq);
    const double formula = cov_via_formula(cs, sq, sq);
    CHECK(formula == doctest::Approx(d.volume * d.volume * d.cov).epsilon(1e-8));
  }
}

TEST_CASE("counterexample covariance against brute force") {
  const auto r = covariance_report(BodyModel{CounterexampleBody{}}, 1, 2, sq, sq);
  const double oracle_cov = oracle::counterexample_cov_sq();
  CHECK(r.cov > 0.0);
  CHECK(std::abs(r.cov - oracle_cov) <= 1e-6 * oracle_cov);
  CHECK(r.volume == doctest::Approx(8.0 / 3.0));
  CHECK(r.value_formula == doctest::Approx(r.value_direct).epsilon(1e-8));
  CHECK(r.relative_discrepancy < 1e-8);
}

TEST_CASE("exp-poly body against a brute-force slice integral") {
  const auto e = YoungFunction::exp_poly();
  const double top = e.inverse(1.0);
  auto m = [&](double y, double z) {
    const double r = 1.0 - e(y) - e(z);
    return r > 0.0 ? 2.0 * e.inverse(r) : 0.0;
  };
  const double brute = oracle::slice_cov_sq(m, top, top, 1500);
  const CrossSection cs(BodyModel{exp_poly_ball(3)}, 0, 1);
  CHECK(cov_direct(cs, sq, sq).cov == doctest::Approx(brute).epsilon(1e-3));
}

TEST_CASE("degenerate n = 2 uses the indicator") {
  auto m = [](double y, double z) { return y * y + z * z <= 1.0 ? 1.0 : 0.0; };
  const double brute = oracle::slice_cov_sq(m, 1.0, 1.0, 3000);
  const auto r = covariance_report(BodyModel{lp_ball(2.0, 2)}, 0, 1, sq, sq);
  CHECK(r.cov == doctest::Approx(brute).epsilon(2e-3));
  CHECK(r.cov == doctest::Approx(-1.0 / 48.0).epsilon(1e-8));
  CHECK(r.relative_discrepancy < 1e-6);
}

TEST_CASE("constant test function gives zero covariance") {
  const auto c = UnivariateTestFn::constant(3.0);
  const auto r = covariance_report(BodyModel{lp_ball(1.5, 3)}, 0, 2, c, sq);
  CHECK(std::abs(r.cov) < 1e-12);
  CHECK(std::abs(r.value_formula) < 1e-12);
}

TEST_CASE("cross-mass axis") {
  const CrossMassGrid g;
  const auto ax = crossmass_axis(2.0, g);
  REQUIRE(ax.size() == g.points);
  CHECK(ax.front() == doctest::Approx(2.0 * (1.0 - std::pow(g.gap, 1.0 / 576.0))));
  CHECK(ax.back() == doctest::Approx(2.0 * (1.0 - g.gap)));
  for (std::size_t k = 1; k < ax.size(); ++k) CHECK(ax[k] > ax[k - 1]);
}

TEST_CASE("cross-mass margin at the reference probe point") {
  const CrossSection cs(BodyModel{CounterexampleBody{}}, 1, 2);
  CHECK(crossmass_margin(cs, 0.8, 0.2, 0.6, 0.1) == doctest::Approx(-0.32).epsilon(1e-14));
  CHECK(crossmass_margin(cs, 0.8, 0.2, 0.6, 0.1) == doctest::Approx(oracle::counterexample_margin(0.8, 0.2, 0.6, 0.1)));
  CHECK(crossmass_margin(cs, 0.9, 0.5, 0.4, 0.1) == doctest::Approx(0.0));
}

TEST_CASE("cross-mass verdicts") {
  const auto l1 = crossmass_check(CrossSection(BodyModel{lp_ball(1.0, 3)}, 0, 1));
  CHECK(l1.holds);
  CHECK(l1.violations == 0);
  CHECK(l1.min_margin >= -1e-9);
  CHECK(l1.quadruples == 276u * 276u);

  const auto ce = crossmass_check(CrossSection(BodyModel{CounterexampleBody{}}, 1, 2));
  CHECK_FALSE(ce.holds);
  CHECK(ce.min_margin < -1e-3);
  const auto [y, yb, z, zb] = ce.worst;
  CHECK(ce.min_margin == doctest::Approx(oracle::counterexample_margin(y, yb, z, zb)).epsilon(1e-12));
}

TEST_CASE("sign verdicts") {
  CHECK(sign_verdict(CrossSection(BodyModel{lp_ball(2.0, 3)}, 0, 1), sq, sq) == SignVerdict::nonpositive);
  CHECK(sign_verdict(CrossSection(BodyModel{CounterexampleBody{}}, 1, 2), sq, sq) == SignVerdict::nonnegative);
  const auto bump = UnivariateTestFn::tabulated({{0, 1}, {1, 0}});
  CHECK_THROWS_AS(sign_verdict(CrossSection(BodyModel{lp_ball(2.0, 3)}, 0, 1), bump, sq), ContractError);

  CrossMassVerdict mixed;
  mixed.min_margin = -0.1;
  mixed.max_margin = 0.1;
  CHECK(sign_verdict(mixed) == SignVerdict::indeterminate);
  CrossMassVerdict tie;
  CHECK(sign_verdict(tie) == SignVerdict::indeterminate);
  CHECK(to_string(SignVerdict::nonpositive) == "nonpositive");
}

TEST_CASE("log-concavity of remaining-coordinate slices") {
  for (const auto& body : {lp_ball(1.0, 4), lp_ball(6.0, 5), exp_poly_ball(4), piecewise_ball(4)}) {
    const CrossSection cs(BodyModel{body}, 0, 1);
    const auto v = logconcavity_check(*cs.remaining(), 40);
    CHECK(v.holds);
    CHECK(v.min_margin >= -1e-9);
    std::size_t expected = 0;
    for (std::size_t a = 0; a < 40; ++a)
      for (std::size_t b = 1; a + b <= 40; ++b)
        for (std::size_t c = 1; a + b + c <= 40; ++c) ++expected;
    CHECK(v.triples == expected);
  }
  CHECK_THROWS_AS(logconcavity_check(*CrossSection(BodyModel{lp_ball(1.0, 3)}, 0, 1).remaining(), 2), ContractError);
}
