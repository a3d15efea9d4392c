#include "orliczcorr/young.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "orliczcorr/errors.hpp"

namespace orliczcorr {

namespace {

constexpr double kInverseTolerance = 1e-12;

// e^t - 1 - t without cancellation for small t.
double expm1_minus_t(double t) {
  if (t < 1e-2) {
    // t^2/2 + t^3/6 + ... ; eight terms reach double precision at t = 1e-2.
    double term = t * t / 2.0;
    double sum = term;
    for (int k = 3; k <= 10; ++k) {
      term *= t / k;
      sum += term;
    }
    return sum;
  }
  return std::expm1(t) - t;
}

double fast_pow(double t, double p) {
  if (p == 1.0) return t;
  if (p == 2.0) return t * t;
  if (p == 3.0) return t * t * t;
  return std::pow(t, p);
}

double fast_root(double v, double p) {
  if (p == 1.0) return v;
  if (p == 2.0) return std::sqrt(v);
  if (p == 3.0) return std::cbrt(v);
  return std::pow(v, 1.0 / p);
}

void require_nonnegative(double t, const char* what) {
  if (!(t >= 0.0) || std::isnan(t)) {
    std::ostringstream os;
    os << what << " requires a non-negative argument, got " << t;
    throw DomainError(os.str());
  }
}

}  // namespace

std::string_view to_string(YoungFamily family) {
  switch (family) {
    case YoungFamily::power: return "power";
    case YoungFamily::scaled_power: return "scaled-power";
    case YoungFamily::exp_poly: return "exp-poly";
    case YoungFamily::piecewise_linear: return "piecewise-linear";
  }
  return "unknown";
}

std::optional<YoungFamily> parse_young_family(std::string_view name) {
  for (auto f : {YoungFamily::power, YoungFamily::scaled_power, YoungFamily::exp_poly,
                 YoungFamily::piecewise_linear}) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

YoungFunction YoungFunction::power(double p) {
  if (!std::isfinite(p) || p < 1.0) throw DomainError("power Young function needs finite p >= 1");
  YoungFunction f;
  f.family_ = YoungFamily::power;
  f.p_ = p;
  return f;
}

YoungFunction YoungFunction::scaled_power(double p, double s) {
  if (!std::isfinite(p) || p < 1.0) throw DomainError("scaled-power Young function needs finite p >= 1");
  if (!std::isfinite(s) || s <= 0.0) throw DomainError("scaled-power Young function needs finite s > 0");
  YoungFunction f;
  f.family_ = YoungFamily::scaled_power;
  f.p_ = p;
  f.s_ = s;
  return f;
}

YoungFunction YoungFunction::exp_poly(double s) {
  if (!std::isfinite(s) || s <= 0.0) throw DomainError("exp-poly Young function needs finite s > 0");
  YoungFunction f;
  f.family_ = YoungFamily::exp_poly;
  f.p_ = 0.0;
  f.s_ = s;
  return f;
}

YoungFunction YoungFunction::piecewise_linear(std::vector<Knot> knots) {
  if (knots.size() < 2) throw DomainError("piecewise-linear Young function needs at least two knots");
  if (knots.front().t != 0.0 || knots.front().value != 0.0)
    throw DomainError("piecewise-linear Young function must start at (0, 0)");
  std::vector<double> slopes;
  slopes.reserve(knots.size() - 1);
  for (std::size_t k = 1; k < knots.size(); ++k) {
    const Knot& a = knots[k - 1];
    const Knot& b = knots[k];
    if (!std::isfinite(b.t) || !std::isfinite(b.value))
      throw DomainError("piecewise-linear knots must be finite");
    if (!(b.t > a.t)) throw DomainError("piecewise-linear knot abscissae must increase strictly");
    const double slope = (b.value - a.value) / (b.t - a.t);
    if (!(slope > 0.0)) throw DomainError("piecewise-linear Young function must be strictly increasing");
    if (!slopes.empty() && slope < slopes.back() * (1.0 - 1e-12))
      throw DomainError("piecewise-linear Young function must be convex (non-decreasing slopes)");
    slopes.push_back(slope);
  }
  YoungFunction f;
  f.family_ = YoungFamily::piecewise_linear;
  f.p_ = 0.0;
  f.knots_ = std::move(knots);
  f.slopes_ = std::move(slopes);
  return f;
}

double YoungFunction::eval_unchecked(double t) const {
  switch (family_) {
    case YoungFamily::power: return fast_pow(t, p_);
    case YoungFamily::scaled_power: return s_ * fast_pow(t, p_);
    case YoungFamily::exp_poly: return s_ * expm1_minus_t(t);
    case YoungFamily::piecewise_linear: {
      // Index of the segment [knots_[k], knots_[k+1]) containing t.
      auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                                 [](double x, const Knot& k) { return x < k.t; });
      std::size_t k = static_cast<std::size_t>(it - knots_.begin());
      k = k == 0 ? 0 : k - 1;
      k = std::min(k, slopes_.size() - 1);
      return knots_[k].value + slopes_[k] * (t - knots_[k].t);
    }
  }
  return 0.0;
}

double YoungFunction::operator()(double t) const {
  require_nonnegative(t, "Young function evaluation");
  return eval_unchecked(t);
}

double YoungFunction::derivative(double t) const {
  require_nonnegative(t, "Young function derivative");
  switch (family_) {
    case YoungFamily::power:
    case YoungFamily::scaled_power:
      if (p_ == 1.0) return s_;
      return s_ * p_ * fast_pow(t, p_ - 1.0);
    case YoungFamily::exp_poly: return s_ * std::expm1(t);
    case YoungFamily::piecewise_linear: {
      auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                                 [](double x, const Knot& k) { return x < k.t; });
      std::size_t k = static_cast<std::size_t>(it - knots_.begin());
      k = k == 0 ? 0 : k - 1;
      return slopes_[std::min(k, slopes_.size() - 1)];
    }
  }
  return 0.0;
}

double YoungFunction::inverse(double v) const {
  require_nonnegative(v, "Young function inverse");
  if (v == 0.0) return 0.0;
  if (!std::isfinite(v)) throw SearchError("Young function inverse: value is not finite");
  switch (family_) {
    case YoungFamily::power: return fast_root(v, p_);
    case YoungFamily::scaled_power: return fast_root(v / s_, p_);
    case YoungFamily::piecewise_linear: {
      auto it = std::upper_bound(knots_.begin(), knots_.end(), v,
                                 [](double x, const Knot& k) { return x < k.value; });
      std::size_t k = static_cast<std::size_t>(it - knots_.begin());
      k = k == 0 ? 0 : k - 1;
      k = std::min(k, slopes_.size() - 1);
      return knots_[k].t + (v - knots_[k].value) / slopes_[k];
    }
    case YoungFamily::exp_poly: {
      // Solve e^t - 1 - t = w. The function is convex and increasing, so
      // Newton from a point right of the root decreases monotonically onto it.
      const double w = v / s_;
      double t = std::min(std::sqrt(2.0 * w), std::log(2.0 * (w + 1.0)));
      if (!std::isfinite(t)) throw SearchError("exp-poly inverse: upper bracket overflowed");
      for (int iter = 0; iter < 200; ++iter) {
        const double h = expm1_minus_t(t) - w;
        const double dh = std::expm1(t);
        if (h <= 0.0 || dh <= 0.0) break;
        const double step = h / dh;
        t -= step;
        if (step <= 4.0 * std::numeric_limits<double>::epsilon() * t) break;
      }
      if (t < 0.0) t = 0.0;
      if (std::abs(eval_unchecked(t) - v) > kInverseTolerance * std::max(1.0, v)) {
        // Newton stalled; finish with bisection on a verified bracket.
        double lo = 0.0;
        double hi = std::max(t, 1e-300);
        int expansions = 0;
        while (eval_unchecked(hi) < v) {
          hi *= 2.0;
          if (++expansions > 2100) throw SearchError("exp-poly inverse: bracket expansion cap exceeded");
        }
        for (int iter = 0; iter < 200 && hi - lo > 0.0; ++iter) {
          const double mid = 0.5 * (lo + hi);
          if (mid == lo || mid == hi) break;
          (eval_unchecked(mid) < v ? lo : hi) = mid;
        }
        t = 0.5 * (lo + hi);
      }
      return t;
    }
  }
  return 0.0;
}

std::vector<double> YoungFunction::kinks() const {
  std::vector<double> out;
  if (family_ == YoungFamily::piecewise_linear) {
    for (std::size_t k = 1; k + 1 < knots_.size(); ++k) out.push_back(knots_[k].t);
  }
  return out;
}

std::string YoungFunction::describe() const {
  std::ostringstream os;
  os.precision(6);
  os << to_string(family_);
  switch (family_) {
    case YoungFamily::power: os << "(p=" << p_ << ")"; break;
    case YoungFamily::scaled_power: os << "(p=" << p_ << ",s=" << s_ << ")"; break;
    case YoungFamily::exp_poly: os << "(s=" << s_ << ")"; break;
    case YoungFamily::piecewise_linear: os << "(" << knots_.size() << " knots)"; break;
  }
  return os.str();
}

ScaledYoung::ScaledYoung(YoungFunction f, double scale) : f_(std::move(f)), scale_(scale) {
  if (!std::isfinite(scale) || scale <= 0.0) throw DomainError("coordinate scale must be finite and > 0");
}

double ScaledYoung::operator()(double t) const { return f_(t / scale_); }

double ScaledYoung::derivative(double t) const { return f_.derivative(t / scale_) / scale_; }

double ScaledYoung::inverse(double v) const { return scale_ * f_.inverse(v); }

double ScaledYoung::power_width() const {
  if (!is_power_law()) throw ContractError("power_width on a non-power Young function");
  // s (t / scale)^p = (t / w)^p  with  w = scale * s^(-1/p)
  return scale_ * std::pow(f_.coefficient(), -1.0 / f_.exponent());
}

std::vector<double> ScaledYoung::kinks() const {
  auto k = f_.kinks();
  for (double& t : k) t *= scale_;
  return k;
}

}  // namespace orliczcorr
