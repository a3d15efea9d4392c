#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "generators.hpp"
#include "orliczcorr/correlation.hpp"
#include "orliczcorr/cross_section.hpp"
#include "orliczcorr/sampling.hpp"

using namespace orliczcorr;

TEST_CASE("Young functions: convex, increasing, invertible") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    gen::Rng r(seed);
    const auto f = gen::young(r);
    INFO(gen::tag(seed), " ", f.describe());
    CHECK(f(0.0) == 0.0);
    for (int k = 0; k < 10; ++k) {
      const double a = r.uniform(0.0, 3.0), b = r.uniform(0.0, 3.0);
      const double lo = std::min(a, b), hi = std::max(a, b);
      CHECK(f(lo) <= f(hi));
      CHECK(f(0.5 * (a + b)) <= 0.5 * (f(a) + f(b)) + 1e-12 * (1.0 + f(a) + f(b)));
      const double v = r.uniform(1e-6, 5.0);
      CHECK(std::abs(f(f.inverse(v)) - v) <= 1e-11 * std::max(1.0, v));
      const double h = 1e-6;
      const double t = r.uniform(0.1, 2.0);
      const auto kinks = f.kinks();
      const bool near_kink =
          std::any_of(kinks.begin(), kinks.end(), [&](double k) { return std::abs(k - t) < 2.0 * h; });
      if (!near_kink) {
        const double fd = (f(t + h) - f(t - h)) / (2.0 * h);
        CHECK(f.derivative(t) == doctest::Approx(fd).epsilon(1e-5));
      }
    }
  }
}

TEST_CASE("the gauge is positively homogeneous and symmetric") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    gen::Rng r(seed);
    const auto b = gen::orlicz_ball(r, 2, 7);
    INFO(gen::tag(seed));
    std::vector<double> x(b.dim());
    for (double& v : x) v = r.uniform(-1.0, 1.0);
    const double lambda = r.uniform(0.1, 3.0);
    std::vector<double> y = x, z = x;
    for (double& v : y) v *= lambda;
    for (std::size_t k = 0; k < z.size(); ++k)
      if (r.coin()) z[k] = -z[k];
    CHECK(b.norm(y) == doctest::Approx(lambda * b.norm(x)).epsilon(1e-9));
    CHECK(b.norm(z) == doctest::Approx(b.norm(x)).epsilon(1e-12));
  }
}

TEST_CASE("margin is antisymmetric in each ordered pair") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    gen::Rng r(seed);
    const BodyModel b = gen::orlicz_ball(r, 3, 5);
    const std::size_t n = body_dim(b);
    const std::size_t i = r.integer(0, n - 1);
    std::size_t j = r.integer(0, n - 2);
    if (j >= i) ++j;
    const CrossSection cs(b, i, j);
    INFO(gen::tag(seed));
    for (int k = 0; k < 5; ++k) {
      const auto q = gen::quadruple(r, cs.y_max(), cs.z_max());
      const double m = crossmass_margin(cs, q.y, q.ybar, q.z, q.zbar);
      CHECK(crossmass_margin(cs, q.ybar, q.y, q.z, q.zbar) == doctest::Approx(-m).epsilon(1e-12));
      CHECK(crossmass_margin(cs, q.y, q.ybar, q.zbar, q.z) == doctest::Approx(-m).epsilon(1e-12));
      CHECK(crossmass_margin(cs, q.y, q.y, q.z, q.zbar) == 0.0);
    }
  }
}

TEST_CASE("exchanging the pair transposes the slice measure") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    gen::Rng r(seed);
    const BodyModel b = gen::orlicz_ball(r, 3, 5);
    const CrossSection ij(b, 0, 2);
    const CrossSection ji(b, 2, 0);
    INFO(gen::tag(seed));
    for (int k = 0; k < 5; ++k) {
      const double y = r.uniform(0.0, ij.y_max()), z = r.uniform(0.0, ij.z_max());
      CHECK(ij(y, z) == doctest::Approx(ji(z, y)).epsilon(1e-12));
    }
  }
}

TEST_CASE("identical coordinates give a symmetric slice measure and covariance") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    gen::Rng r(seed);
    const auto f = gen::young(r, false);
    const auto other = gen::young(r, false);
    const double s = r.uniform(0.5, 2.0);
    const OrliczBall b({f, other, f}, {s, r.uniform(0.5, 2.0), s});
    const CrossSection cs(BodyModel{b}, 0, 2);
    INFO(gen::tag(seed));
    for (int k = 0; k < 5; ++k) {
      const double y = r.uniform(0.0, cs.y_max()), z = r.uniform(0.0, cs.z_max());
      CHECK(cs(y, z) == doctest::Approx(cs(z, y)).epsilon(1e-12));
    }
    const auto sq = UnivariateTestFn::square();
    const auto ab = UnivariateTestFn::abs();
    const double fg = cov_direct(cs, sq, ab).cov;
    const double gf = cov_direct(cs, ab, sq).cov;
    CHECK(fg == doctest::Approx(gf).epsilon(1e-7));
  }
}

TEST_CASE("the slice formula equals |K|^2 cov on random power bodies") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    gen::Rng r(seed);
    const BodyModel b = gen::power_ball(r, 3, 5);
    const auto f = gen::monotone_test_fn(r);
    const auto g = gen::monotone_test_fn(r);
    const CrossSection cs(b, 0, 1);
    INFO(gen::tag(seed), " f=", f.describe(), " g=", g.describe());
    const auto d = cov_direct(cs, f, g);
    const double formula = cov_via_formula(cs, f, g);
    const double scale = d.volume * d.volume * (std::abs(d.mean_fg) + std::abs(d.mean_f * d.mean_g));
    CHECK(std::abs(formula - d.volume * d.volume * d.cov) <= 1e-7 * scale);
  }
}

TEST_CASE("cross-mass verdict is invariant under a common dilation") {
  CrossMassGrid grid{10};
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    gen::Rng r(seed);
    const auto b = gen::power_ball(r, 3, 5);
    const double lambda = r.uniform(0.3, 3.0);
    auto scales = b.scales();
    for (double& s : scales) s *= lambda;
    const auto v = crossmass_check(CrossSection(BodyModel{b}, 0, 1), grid);
    const auto w = crossmass_check(CrossSection(BodyModel{b.with_scales(scales)}, 0, 1), grid);
    INFO(gen::tag(seed));
    CHECK(v.holds == w.holds);
    const double factor = std::pow(lambda, 2.0 * static_cast<double>(b.dim() - 2));
    CHECK(w.min_margin == doctest::Approx(factor * v.min_margin).epsilon(1e-6).scale(1e-12));
    CHECK(w.max_margin == doctest::Approx(factor * v.max_margin).epsilon(1e-6));
  }
}

TEST_CASE("generalized Orlicz balls satisfy the cross-mass inequality") {
  CrossMassGrid grid{8};
  for (std::uint64_t seed = 1; seed <= 16; ++seed) {
    gen::Rng r(seed);
    const BodyModel b = gen::orlicz_ball(r, 3, 5);
    const std::size_t n = body_dim(b);
    const std::size_t i = r.integer(0, n - 1);
    std::size_t j = r.integer(0, n - 2);
    if (j >= i) ++j;
    INFO(gen::tag(seed), " pair ", i, ",", j);
    const auto v = crossmass_check(CrossSection(b, i, j), grid);
    CHECK(v.min_margin >= -1e-9);
    CHECK(v.violations == 0);
  }
}

TEST_CASE("samples of random bodies stay inside") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    gen::Rng r(seed);
    const BodyModel b = gen::orlicz_ball(r, 2, 7);
    SamplerConfig cfg;
    cfg.seed = seed;
    cfg.chains = 2;
    cfg.samples_per_chain = 300;
    cfg.direction = r.coin() ? DirectionMode::sphere : DirectionMode::coordinate;
    const auto s = sample(b, cfg);
    INFO(gen::tag(seed));
    std::size_t outside = 0;
    for (std::size_t k = 0; k < s.size(); ++k) outside += body_norm(b, s.row(k)) > 1.0 + 1e-9;
    CHECK(outside == 0);
  }
}
