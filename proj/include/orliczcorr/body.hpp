#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "orliczcorr/young.hpp"

namespace orliczcorr {

using Point = std::span<const double>;

/// Generalized Orlicz ball {x : sum_i f_i(|x_i| / scale_i) <= 1}.
///
/// Immutable after construction; all members are safe for concurrent use.
class OrliczBall {
 public:
  OrliczBall(std::vector<YoungFunction> young, std::vector<double> scales, std::string name = {});

  /// n copies of the same Young function with unit scales.
  static OrliczBall uniform(std::size_t n, const YoungFunction& f, std::string name = {});

  std::size_t dim() const noexcept { return coords_.size(); }
  const std::string& name() const noexcept { return name_; }

  const YoungFunction& young(std::size_t i) const { return coords_.at(i).base(); }
  double scale(std::size_t i) const { return coords_.at(i).scale(); }
  const ScaledYoung& coordinate(std::size_t i) const { return coords_.at(i); }
  const std::vector<ScaledYoung>& coordinates() const noexcept { return coords_; }
  std::vector<double> scales() const;

  /// sum_i f_i(|x_i| / scale_i)
  double modular(Point x) const;
  bool contains(Point x) const { return modular(x) <= 1.0; }
  /// Minkowski gauge, by bisection on lambda in sum f_i(|x_i| / (lambda scale_i)) = 1.
  double norm(Point x) const;
  /// Half-widths scale_i * f_i^{-1}(1) of the bounding box.
  std::vector<double> half_widths() const;

  OrliczBall with_scales(std::vector<double> scales) const;
  OrliczBall renamed(std::string name) const;

  /// All coordinates share the same Young function and scale.
  bool coordinate_symmetric() const;

  friend bool operator==(const OrliczBall& a, const OrliczBall& b);

 private:
  std::vector<ScaledYoung> coords_;
  std::string name_;
};

/// The fixed body {(x, y, z) : |x| + max(|y|, |z|) <= 1} in dimension 3.
class CounterexampleBody {
 public:
  static constexpr std::size_t dim() noexcept { return 3; }
  std::string name() const { return "counterexample"; }
  double norm(Point x) const;
  bool contains(Point x) const { return norm(x) <= 1.0; }
  std::vector<double> half_widths() const { return {1.0, 1.0, 1.0}; }
  friend bool operator==(const CounterexampleBody&, const CounterexampleBody&) = default;
};

using BodyModel = std::variant<OrliczBall, CounterexampleBody>;

std::size_t body_dim(const BodyModel& body);
std::string body_id(const BodyModel& body);
double body_norm(const BodyModel& body, Point x);
bool body_contains(const BodyModel& body, Point x);
std::vector<double> bounding_box(const BodyModel& body);

}  // namespace orliczcorr
