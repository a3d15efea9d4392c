#include "orliczcorr/test_bodies.hpp"

#include <random>
#include <sstream>

#include "orliczcorr/sampling.hpp"

namespace orliczcorr {

namespace {

std::string format_p(double p) {
  std::ostringstream os;
  os << p;
  return os.str();
}

}  // namespace

OrliczBall lp_ball(double p, std::size_t n) {
  return OrliczBall::uniform(n, YoungFunction::power(p), "l" + format_p(p) + "-n" + std::to_string(n));
}

OrliczBall mixed_power_ball(std::size_t n) {
  static constexpr double kExponents[] = {1.0, 2.0, 3.0, 6.0, 1.5};
  std::vector<YoungFunction> young;
  for (std::size_t i = 0; i < n; ++i) young.push_back(YoungFunction::power(kExponents[i % 5]));
  return OrliczBall(std::move(young), std::vector<double>(n, 1.0), "mixed-n" + std::to_string(n));
}

OrliczBall exp_poly_ball(std::size_t n) {
  return OrliczBall::uniform(n, YoungFunction::exp_poly(1.0), "expoly-n" + std::to_string(n));
}

OrliczBall piecewise_ball(std::size_t n) {
  return OrliczBall::uniform(n, YoungFunction::piecewise_linear({{0, 0}, {0.5, 0.25}, {1, 1}, {2, 3}}),
                             "piecewise-n" + std::to_string(n));
}

std::vector<OrliczBall> quadrature_suite() {
  std::vector<OrliczBall> out;
  for (double p : {1.0, 1.5, 2.0, 3.0, 6.0})
    for (std::size_t n : {3, 4, 5}) out.push_back(lp_ball(p, n));
  for (std::size_t n : {3, 4, 5}) out.push_back(mixed_power_ball(n));
  for (std::size_t n : {3, 4}) out.push_back(exp_poly_ball(n));
  for (std::size_t n : {3, 4}) out.push_back(piecewise_ball(n));
  return out;
}

std::vector<OrliczBall> identity_suite() {
  return {lp_ball(1.0, 3), lp_ball(1.5, 4), lp_ball(2.0, 5), lp_ball(6.0, 3), mixed_power_ball(4),
          exp_poly_ball(3)};
}

std::vector<OrliczBall> sampling_suite() {
  std::vector<OrliczBall> out;
  for (std::size_t n : {8, 16, 32, 64}) {
    out.push_back(lp_ball(2.0, n));
    out.push_back(lp_ball(1.0, n));
    out.push_back(exp_poly_ball(n));
    out.push_back(mixed_power_ball(n));
  }
  return out;
}

OrliczBall random_orlicz(std::uint64_t seed) {
  std::mt19937_64 rng(splitmix64(seed));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double a, double b) { return a + (b - a) * unit(rng); };
  const std::size_t n = std::uniform_int_distribution<std::size_t>(3, 6)(rng);
  std::vector<YoungFunction> young;
  std::vector<double> scales;
  for (std::size_t i = 0; i < n; ++i) {
    const double pick = unit(rng);
    if (pick < 0.4) {
      young.push_back(YoungFunction::power(uniform(1.0, 8.0)));
    } else if (pick < 0.6) {
      young.push_back(YoungFunction::scaled_power(uniform(1.0, 8.0), uniform(0.5, 2.0)));
    } else if (pick < 0.8) {
      young.push_back(YoungFunction::exp_poly(uniform(0.5, 2.0)));
    } else {
      // Increasing slopes give a convex function.
      std::vector<Knot> knots{{0.0, 0.0}};
      double slope = uniform(0.2, 1.0);
      const std::size_t segments = std::uniform_int_distribution<std::size_t>(2, 4)(rng);
      for (std::size_t k = 0; k < segments; ++k) {
        const double dt = uniform(0.2, 0.8);
        knots.push_back({knots.back().t + dt, knots.back().value + slope * dt});
        slope *= uniform(1.2, 3.0);
      }
      young.push_back(YoungFunction::piecewise_linear(std::move(knots)));
    }
    scales.push_back(uniform(0.5, 2.0));
  }
  return OrliczBall(std::move(young), std::move(scales), "random-" + std::to_string(seed));
}

std::vector<OrliczBall> random_suite(std::size_t count, std::uint64_t seed) {
  std::vector<OrliczBall> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(random_orlicz(seed + k));
  return out;
}

}  // namespace orliczcorr
