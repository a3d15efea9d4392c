#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "orliczcorr/quadrature.hpp"
#include "orliczcorr/young.hpp"

namespace orliczcorr {

/// Configuration of the deterministic volume machinery. Every field is
/// reported alongside the results it produced.
struct QuadratureOptions {
  double rel_tol = 1e-8;
  int max_depth = 30;
  /// Bodies of larger dimension are refused (BudgetError).
  std::size_t max_dimension = 8;
  /// Integrand evaluations allowed for one top-level volume evaluation.
  std::uint64_t max_evaluations = 200'000'000;
  /// Collapse power-law coordinates into the closed-form Dirichlet volume
  /// instead of recursing over them.
  bool closed_form_power_groups = true;
};

struct CacheStats {
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  std::size_t entries = 0;
};

/// V(r) = k-dimensional volume of {u : sum_i g_i(|u_i|) <= r}.
///
/// Computed by the recursion V_k(r) = 2 int_0^{g_k^{-1}(r)} V_{k-1}(r - g_k(t)) dt
/// with V_0 = 1 on r >= 0, using adaptive Gauss-Kronrod at relative tolerance
/// rel_tol. Power-law coordinates g(t) = (t/w)^p are grouped into the base case
///   V_P(r) = prod_i (2 w_i Gamma(1 + 1/p_i)) / Gamma(1 + sum_i 1/p_i) * r^{sum_i 1/p_i}
/// unless closed_form_power_groups is off.
///
/// Top-level evaluations are memoized at the exact queried r (no interpolation).
/// The cache admits concurrent readers; insertion takes a unique lock.
class BudgetVolume {
 public:
  explicit BudgetVolume(std::vector<ScaledYoung> coords, QuadratureOptions options = {});
  ~BudgetVolume();
  BudgetVolume(BudgetVolume&&) noexcept;
  BudgetVolume& operator=(BudgetVolume&&) noexcept;

  std::size_t dimension() const noexcept { return dimension_; }
  const QuadratureOptions& options() const noexcept { return options_; }

  double operator()(double r) const;
  /// Same value without touching the cache.
  double compute(double r) const;

  CacheStats cache_stats() const;
  /// r-values in (0, 1) where V is not differentiable. Only a single
  /// piecewise-linear coordinate yields kinks; convolution smooths the rest.
  std::vector<double> kinks() const;
  /// V has a closed form (no quadrature), so caching is pointless.
  bool closed_form() const noexcept {
    return recursive_.empty() || (recursive_.size() == 1 && (!has_base_ || innermost_closed_));
  }

  /// Estimated integrand evaluations per uncached call.
  double estimated_cost() const noexcept { return estimated_cost_; }

 private:
  double level(std::size_t j, double r, std::uint64_t& evaluations) const;
  double piecewise_over_base(double r) const;
  /// r-values where level j is not differentiable, when known exactly.
  std::vector<double> level_kinks(std::size_t j) const;

  std::size_t dimension_ = 0;
  QuadratureOptions options_;
  std::vector<ScaledYoung> recursive_;
  bool has_base_ = false;
  bool innermost_closed_ = false;
  double base_log_constant_ = 0.0;
  double base_exponent_ = 0.0;
  double estimated_cost_ = 1.0;

  struct Cache;
  std::unique_ptr<Cache> cache_;
};

}  // namespace orliczcorr
