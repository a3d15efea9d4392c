#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "orliczcorr/body.hpp"

namespace orliczcorr {

/// l_p ball of dimension n, named "l<p>-n<n>".
OrliczBall lp_ball(double p, std::size_t n);

/// Power exponents cycling through {1, 2, 3, 6, 1.5}.
OrliczBall mixed_power_ball(std::size_t n);

/// e^t - 1 - t on every coordinate.
OrliczBall exp_poly_ball(std::size_t n);

/// Convex piecewise-linear Young function through (0,0), (0.5,0.25), (1,1), (2,3).
OrliczBall piecewise_ball(std::size_t n);

/// Bodies for the deterministic paths: l_p for p in {1, 1.5, 2, 3, 6} and
/// n in {3, 4, 5}, mixed powers, exp-poly and piecewise-linear bodies.
std::vector<OrliczBall> quadrature_suite();

/// Six bodies with n in {3, 4, 5} used for the covariance identity.
std::vector<OrliczBall> identity_suite();

/// Sampling-only bodies: l_1, l_2, exp-poly and mixed powers for n in {8, 16, 32, 64}.
std::vector<OrliczBall> sampling_suite();

/// Random generalized Orlicz ball: n in {3, ..., 6}, families drawn among
/// power (p in [1, 8]), scaled power, exp-poly and piecewise-linear, scales in [0.5, 2].
OrliczBall random_orlicz(std::uint64_t seed);
std::vector<OrliczBall> random_suite(std::size_t count = 12, std::uint64_t seed = 2024);

}  // namespace orliczcorr
