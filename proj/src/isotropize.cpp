#include "orliczcorr/isotropize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "orliczcorr/cross_section.hpp"
#include "orliczcorr/errors.hpp"

namespace orliczcorr {

double second_moment_quadrature(const OrliczBall& body, std::size_t i, const QuadratureOptions& options) {
  const std::size_t n = body.dim();
  if (n > options.max_dimension) {
    std::ostringstream os;
    os << "dimension " << n << " exceeds the quadrature cutoff " << options.max_dimension << "; use Monte Carlo";
    throw BudgetError(os.str());
  }
  std::vector<ScaledYoung> rest;
  for (std::size_t k = 0; k < n; ++k)
    if (k != i) rest.push_back(body.coordinate(k));
  const BudgetVolume v(std::move(rest), options);
  const ScaledYoung& g = body.coordinate(i);

  const double top = g.inverse(1.0);
  std::vector<double> breaks = g.kinks();
  for (double r : v.kinks()) breaks.push_back(g.inverse(1.0 - r));
  std::sort(breaks.begin(), breaks.end());

  AdaptiveOptions opt;
  opt.rel_tol = 1e-11;
  auto integrand = [&](double y) -> Vec<2> {
    const double m = v(1.0 - g(y));
    return {m, y * y * m};
  };
  const auto res = integrate_to_edge<2>(integrand, top, breaks, opt);
  return res.value[1] / res.value[0];
}

namespace {

double spread_of(const std::vector<Estimate>& s) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const auto& e : s) {
    lo = std::min(lo, e.value);
    hi = std::max(hi, e.value);
  }
  return hi / lo - 1.0;
}

bool quadrature_possible(const OrliczBall& body, const IsotropizeOptions& options) {
  return options.allow_quadrature && body.dim() <= options.quadrature.max_dimension;
}

std::vector<Estimate> estimate(const OrliczBall& body, const IsotropizeOptions& options, bool quadrature) {
  std::vector<Estimate> out;
  if (quadrature) {
    for (std::size_t i = 0; i < body.dim(); ++i)
      out.push_back({second_moment_quadrature(body, i, options.quadrature), 0.0});
    return out;
  }
  const auto cfg = resolve(options.sampler, body.dim());
  MomentAccumulator acc(body.dim(), cfg.chains, cfg.samples_per_chain);
  run_sampler(body, cfg, [&](std::size_t c, std::size_t k, Point x) { acc.add(c, k, x); });
  return acc.finish(body.name(), cfg.method).m2;
}

IsotropizeResult isotropize_with(const OrliczBall& body, const IsotropizeOptions& options, bool quadrature) {
  const std::size_t n = body.dim();

  IsotropizeResult r{body, std::vector<double>(n, 1.0), {}, {}, "symmetric",
                     std::numeric_limits<double>::quiet_NaN()};

  if (!body.coordinate_symmetric()) {
    r.method = quadrature ? "quadrature" : "sampling";
    r.before = estimate(body, options, quadrature);
    for (const auto& e : r.before) {
      if (3.0 * e.se > options.tolerance * e.value) {
        std::ostringstream os;
        os << "needs more samples: E X_i^2 = " << e.value << " +- " << e.se << " cannot resolve a "
           << options.tolerance << " relative equalization";
        throw SamplingError(os.str());
      }
    }
    double log_mean = 0.0;
    for (const auto& e : r.before) log_mean += std::log(e.value);
    log_mean /= static_cast<double>(n);
    // E X_i^2 scales with a_i^2; a_i = sqrt(geomean / s_i) keeps prod a_i = 1.
    for (std::size_t i = 0; i < n; ++i) r.multipliers[i] = std::exp(0.5 * (log_mean - std::log(r.before[i].value)));
  }

  if (quadrature) {
    auto scales = body.scales();
    for (std::size_t i = 0; i < n; ++i) scales[i] *= r.multipliers[i];
    const double volume = total_volume(body.with_scales(scales), options.quadrature);
    if (options.normalize_volume) {
      const double c = std::pow(volume, -1.0 / static_cast<double>(n));
      for (std::size_t i = 0; i < n; ++i) r.multipliers[i] *= c;
    }
  }

  auto scales = body.scales();
  for (std::size_t i = 0; i < n; ++i) scales[i] *= r.multipliers[i];
  r.body = body.with_scales(scales);
  if (quadrature) r.volume = total_volume(r.body, options.quadrature);

  if (r.method == "symmetric") {
    r.spread = 0.0;
    r.equalized = true;
    return r;
  }
  r.after = estimate(r.body, options, quadrature);
  r.spread = spread_of(r.after);
  double mean = 0.0;
  for (const auto& e : r.after) mean += e.value;
  mean /= static_cast<double>(n);
  r.equalized = true;
  for (const auto& e : r.after)
    if (std::abs(e.value - mean) > std::max(3.0 * e.se, options.tolerance * mean)) r.equalized = false;
  return r;
}

}  // namespace

IsotropizeResult isotropize(const OrliczBall& body, const IsotropizeOptions& options) {
  const bool quadrature = quadrature_possible(body, options);
  if (options.normalize_volume) {
    if (!quadrature) throw BudgetError("volume normalization needs the quadrature path (dimension within the cutoff)");
    return isotropize_with(body, options, true);
  }
  if (quadrature) {
    try {
      return isotropize_with(body, options, true);
    } catch (const BudgetError&) {
    }
  }
  return isotropize_with(body, options, false);
}

}  // namespace orliczcorr
