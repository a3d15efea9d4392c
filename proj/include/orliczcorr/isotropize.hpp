#pragma once

#include <string>
#include <vector>

#include "orliczcorr/body.hpp"
#include "orliczcorr/budget_volume.hpp"
#include "orliczcorr/moments.hpp"
#include "orliczcorr/sampling.hpp"

namespace orliczcorr {

struct IsotropizeOptions {
  /// Use exact one-dimensional marginals when the dimension allows it.
  bool allow_quadrature = true;
  /// Afterwards rescale all coordinates uniformly so that |K| = 1 (quadrature only).
  bool normalize_volume = false;
  /// Relative equalization tolerance for E X_i^2.
  double tolerance = 0.01;
  SamplerConfig sampler{SamplerMethod::hit_and_run, DirectionMode::coordinate, 1, 0, 0, 8, 50'000};
  QuadratureOptions quadrature;
};

struct IsotropizeResult {
  OrliczBall body;
  /// New scale_i / old scale_i.
  std::vector<double> multipliers;
  std::vector<Estimate> before;
  std::vector<Estimate> after;
  /// "symmetric", "quadrature" or "sampling".
  std::string method;
  /// |K| after the transformation; NaN when not computed by quadrature.
  double volume;
  /// max_i E X_i^2 / min_i E X_i^2 - 1 after the transformation.
  double spread = 0.0;
  bool equalized = true;
};

/// E X_i^2 by quadrature: int y^2 V(1 - g_i(|y|)) dy / int V(1 - g_i(|y|)) dy,
/// V the budget volume of the other coordinates.
double second_moment_quadrature(const OrliczBall& body, std::size_t i, const QuadratureOptions& options = {});

/// Per-coordinate rescaling with multipliers a_i proportional to 1 / sqrt(E X_i^2)
/// and prod a_i = 1 (volume preserved), so that all E X_i^2 coincide.
/// Quadrature that would exceed its budget falls back to sampling, except
/// under volume normalization, which needs |K| and throws BudgetError instead.
/// Throws SamplingError when sampled second moments are too noisy for the tolerance.
IsotropizeResult isotropize(const OrliczBall& body, const IsotropizeOptions& options = {});

}  // namespace orliczcorr
