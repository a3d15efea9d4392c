#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace orliczcorr {

enum class YoungFamily { power, scaled_power, exp_poly, piecewise_linear };

std::string_view to_string(YoungFamily family);
std::optional<YoungFamily> parse_young_family(std::string_view name);

struct Knot {
  double t = 0.0;
  double value = 0.0;
  friend bool operator==(const Knot&, const Knot&) = default;
};

/// Convex, strictly increasing, unbounded f : [0, inf) -> [0, inf) with f(0) = 0.
///
/// Families:
///   power(p)              t^p, p >= 1
///   scaled_power(p, s)    s * t^p
///   exp_poly(s)           s * (e^t - 1 - t)
///   piecewise_linear      linear interpolation through knots starting at (0, 0),
///                         extended past the last knot with the last slope
///
/// Construction validates the invariants; a non-convex or non-increasing
/// descriptor throws DomainError instead of being repaired.
class YoungFunction {
 public:
  static YoungFunction power(double p);
  static YoungFunction scaled_power(double p, double s);
  static YoungFunction exp_poly(double s = 1.0);
  static YoungFunction piecewise_linear(std::vector<Knot> knots);

  YoungFamily family() const noexcept { return family_; }
  /// Exponent p of the power families; 0 for the others.
  double exponent() const noexcept { return p_; }
  /// Leading coefficient s (1 for power and piecewise-linear).
  double coefficient() const noexcept { return s_; }
  const std::vector<Knot>& knots() const noexcept { return knots_; }

  /// True when f(t) = s * t^p.
  bool is_power_law() const noexcept {
    return family_ == YoungFamily::power || family_ == YoungFamily::scaled_power;
  }

  double operator()(double t) const;
  /// Right derivative.
  double derivative(double t) const;
  /// Returns t with |f(t) - v| <= 1e-12 * max(1, v).
  double inverse(double v) const;

  /// Interior abscissae where f is not smooth (piecewise-linear knots).
  std::vector<double> kinks() const;

  std::string describe() const;

  friend bool operator==(const YoungFunction&, const YoungFunction&) = default;

 private:
  YoungFunction() = default;

  double eval_unchecked(double t) const;

  YoungFamily family_ = YoungFamily::power;
  double p_ = 1.0;
  double s_ = 1.0;
  std::vector<Knot> knots_;
  std::vector<double> slopes_;
};

/// The effective Young function of one coordinate: t -> f(t / scale).
class ScaledYoung {
 public:
  ScaledYoung(YoungFunction f, double scale);

  const YoungFunction& base() const noexcept { return f_; }
  double scale() const noexcept { return scale_; }

  double operator()(double t) const;
  double derivative(double t) const;
  double inverse(double v) const;

  bool is_power_law() const noexcept { return f_.is_power_law(); }
  double exponent() const noexcept { return f_.exponent(); }
  /// For power laws, the width w with f(t / scale) = (t / w)^p.
  double power_width() const;

  std::vector<double> kinks() const;

 private:
  YoungFunction f_;
  double scale_;
};

}  // namespace orliczcorr
