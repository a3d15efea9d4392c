#include "orliczcorr/cross_section.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "orliczcorr/errors.hpp"

namespace orliczcorr {

namespace {

void refuse_large(std::size_t n, const QuadratureOptions& options) {
  if (n > options.max_dimension) {
    std::ostringstream os;
    os << "dimension " << n << " exceeds the quadrature cutoff " << options.max_dimension
       << "; use Monte Carlo";
    throw BudgetError(os.str());
  }
}

std::vector<double> kinks_below(const ScaledYoung& g, double extent) {
  std::vector<double> out;
  for (double k : g.kinks())
    if (k > 0.0 && k < extent) out.push_back(k);
  return out;
}

void sort_unique(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Points t in (0, g_a^{-1}(1)) where g_a(t) + g_b(c) = 1 - v for some level c
// (or kink of g_b) and v in {0} + rest kinks, together with the kinks of g_a.
std::vector<double> orlicz_breaks(const ScaledYoung& ga, const ScaledYoung& gb, std::span<const double> levels,
                                  const std::vector<double>& rest_kinks) {
  const double top = ga.inverse(1.0);
  std::vector<double> out = kinks_below(ga, top);
  std::vector<double> cs(levels.begin(), levels.end());
  for (double k : gb.kinks()) cs.push_back(k);
  std::vector<double> vs{0.0};
  vs.insert(vs.end(), rest_kinks.begin(), rest_kinks.end());
  for (double c : cs) {
    const double gc = gb(std::abs(c));
    for (double v : vs) {
      const double s = 1.0 - v - gc;
      if (s <= 0.0) continue;
      const double t = ga.inverse(s);
      if (t > 0.0 && t < top) out.push_back(t);
    }
  }
  sort_unique(out);
  return out;
}

std::vector<double> crossings(std::span<const double> levels, bool complement) {
  std::vector<double> out;
  for (double c : levels) {
    const double t = complement ? 1.0 - std::abs(c) : std::abs(c);
    if (t > 0.0 && t < 1.0) out.push_back(t);
  }
  sort_unique(out);
  return out;
}

}  // namespace

CrossSection::CrossSection(const BodyModel& body, std::size_t i, std::size_t j, QuadratureOptions options)
    : i_(i), j_(j), n_(orliczcorr::body_dim(body)), body_id_(orliczcorr::body_id(body)) {
  if (i == j) throw ContractError("cross section needs two distinct coordinates");
  if (i >= n_ || j >= n_) throw ContractError("cross section coordinate index out of range");
  refuse_large(n_, options);

  if (const auto* ball = std::get_if<OrliczBall>(&body)) {
    kind_ = Kind::orlicz;
    gi_ = ball->coordinate(i);
    gj_ = ball->coordinate(j);
    std::vector<ScaledYoung> rest;
    for (std::size_t k = 0; k < n_; ++k)
      if (k != i && k != j) rest.push_back(ball->coordinate(k));
    remaining_.emplace(std::move(rest), options);
    rest_kinks_ = remaining_->kinks();
    return;
  }
  if (i != 0 && j != 0) {
    kind_ = Kind::counter_max;
  } else {
    kind_ = i == 0 ? Kind::counter_x_first : Kind::counter_x_second;
  }
}

double CrossSection::operator()(double y, double z) const {
  if (!std::isfinite(y) || !std::isfinite(z)) throw DomainError("cross section at a non-finite point");
  const double ay = std::abs(y);
  const double az = std::abs(z);
  switch (kind_) {
    case Kind::orlicz: {
      const double r = 1.0 - (*gi_)(ay) - (*gj_)(az);
      if (r < 0.0) return 0.0;
      return (*remaining_)(r);
    }
    case Kind::counter_max: {
      const double m = std::max(ay, az);
      return m <= 1.0 ? 2.0 * (1.0 - m) : 0.0;
    }
    case Kind::counter_x_first: return ay + az <= 1.0 ? 2.0 * (1.0 - ay) : 0.0;
    case Kind::counter_x_second: return ay + az <= 1.0 ? 2.0 * (1.0 - az) : 0.0;
  }
  return 0.0;
}

double CrossSection::y_extent(double z) const {
  const double az = std::abs(z);
  switch (kind_) {
    case Kind::orlicz: {
      const double r = 1.0 - (*gj_)(az);
      return r > 0.0 ? gi_->inverse(r) : 0.0;
    }
    case Kind::counter_max: return az <= 1.0 ? 1.0 : 0.0;
    case Kind::counter_x_first:
    case Kind::counter_x_second: return std::max(0.0, 1.0 - az);
  }
  return 0.0;
}

double CrossSection::z_extent(double y) const {
  const double ay = std::abs(y);
  switch (kind_) {
    case Kind::orlicz: {
      const double r = 1.0 - (*gi_)(ay);
      return r > 0.0 ? gj_->inverse(r) : 0.0;
    }
    case Kind::counter_max: return ay <= 1.0 ? 1.0 : 0.0;
    case Kind::counter_x_first:
    case Kind::counter_x_second: return std::max(0.0, 1.0 - ay);
  }
  return 0.0;
}

std::vector<double> CrossSection::y_kinks(double z) const {
  const double az = std::abs(z);
  switch (kind_) {
    case Kind::orlicz: {
      const double extent = y_extent(z);
      auto out = kinks_below(*gi_, extent);
      const double base = 1.0 - (*gj_)(az);
      for (double v : rest_kinks_) {
        if (base - v <= 0.0) continue;
        const double t = gi_->inverse(base - v);
        if (t > 0.0 && t < extent) out.push_back(t);
      }
      sort_unique(out);
      return out;
    }
    case Kind::counter_max:
      if (az > 0.0 && az < 1.0) return {az};
      return {};
    default: return {};
  }
}

std::vector<double> CrossSection::z_kinks(double y) const {
  const double ay = std::abs(y);
  switch (kind_) {
    case Kind::orlicz: {
      const double extent = z_extent(y);
      auto out = kinks_below(*gj_, extent);
      const double base = 1.0 - (*gi_)(ay);
      for (double v : rest_kinks_) {
        if (base - v <= 0.0) continue;
        const double t = gj_->inverse(base - v);
        if (t > 0.0 && t < extent) out.push_back(t);
      }
      sort_unique(out);
      return out;
    }
    case Kind::counter_max:
      if (ay > 0.0 && ay < 1.0) return {ay};
      return {};
    default: return {};
  }
}

std::vector<double> CrossSection::y_breaks(std::span<const double> z_levels) const {
  switch (kind_) {
    case Kind::orlicz: return orlicz_breaks(*gi_, *gj_, z_levels, rest_kinks_);
    case Kind::counter_max: return crossings(z_levels, false);
    default: return crossings(z_levels, true);
  }
}

std::vector<double> CrossSection::z_breaks(std::span<const double> y_levels) const {
  switch (kind_) {
    case Kind::orlicz: return orlicz_breaks(*gj_, *gi_, y_levels, rest_kinks_);
    case Kind::counter_max: return crossings(y_levels, false);
    default: return crossings(y_levels, true);
  }
}

double total_volume(const BodyModel& body, const QuadratureOptions& options) {
  if (std::holds_alternative<CounterexampleBody>(body)) return 8.0 / 3.0;
  const auto& ball = std::get<OrliczBall>(body);
  refuse_large(ball.dim(), options);
  BudgetVolume v(ball.coordinates(), options);
  return v(1.0);
}

}  // namespace orliczcorr
