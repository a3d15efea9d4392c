#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "orliczcorr/body.hpp"
#include "orliczcorr/budget_volume.hpp"

namespace orliczcorr {

/// m(y, z): (n-2)-dimensional measure of the slice {x in K : x_i = y, x_j = z}.
///
/// For an Orlicz ball, m(y, z) = V(1 - g_i(|y|) - g_j(|z|)) with V the budget
/// volume of the remaining coordinates (for n = 2, the membership indicator).
/// For the counterexample body the closed forms are
///   pair (y, z):  2 (1 - max(|y|, |z|))          on |y|, |z| <= 1
///   pair (x, w):  2 (1 - |x|) [|x| + |w| <= 1]   (either order)
///
/// Besides values it exposes the support (extents) and interior kinks so
/// integrators can place breakpoints.
class CrossSection {
 public:
  CrossSection(const BodyModel& body, std::size_t i, std::size_t j, QuadratureOptions options = {});

  double operator()(double y, double z) const;

  std::pair<std::size_t, std::size_t> pair() const noexcept { return {i_, j_}; }
  std::size_t body_dim() const noexcept { return n_; }
  const std::string& body_id() const noexcept { return body_id_; }

  /// sup{|y| : m(y, z) > 0}; zero when the slice is empty for every y.
  double y_extent(double z) const;
  double z_extent(double y) const;
  double y_max() const { return y_extent(0.0); }
  double z_max() const { return z_extent(0.0); }

  /// Points of (0, y_extent(z)) where y -> m(y, z) is not smooth.
  std::vector<double> y_kinks(double z) const;
  std::vector<double> z_kinks(double y) const;

  /// y in (0, y_max) where a non-smooth curve of m (support boundary, kink
  /// lines) meets one of the lines z = c, c in `z_levels`, or a constant kink line.
  /// Integrals over z with limits among `z_levels` are smooth in y between them.
  std::vector<double> y_breaks(std::span<const double> z_levels) const;
  std::vector<double> z_breaks(std::span<const double> y_levels) const;

  /// Budget volume of the remaining coordinates (Orlicz balls only).
  const BudgetVolume* remaining() const noexcept { return remaining_ ? &*remaining_ : nullptr; }

 private:
  enum class Kind { orlicz, counter_max, counter_x_first, counter_x_second };

  Kind kind_;
  std::size_t i_;
  std::size_t j_;
  std::size_t n_;
  std::string body_id_;
  std::optional<ScaledYoung> gi_;
  std::optional<ScaledYoung> gj_;
  std::optional<BudgetVolume> remaining_;
  std::vector<double> rest_kinks_;
};

/// |K|: budget volume of all coordinates at r = 1, or 8/3 for the counterexample.
double total_volume(const BodyModel& body, const QuadratureOptions& options = {});

}  // namespace orliczcorr
