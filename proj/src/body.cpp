#include "orliczcorr/body.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "orliczcorr/errors.hpp"

namespace orliczcorr {

namespace {

void require_finite(Point x, std::size_t n) {
  if (x.size() != n) throw DomainError("point dimension does not match body dimension");
  for (double v : x)
    if (!std::isfinite(v)) throw DomainError("point has a non-finite coordinate");
}

std::string default_name(const std::vector<ScaledYoung>& coords) {
  std::ostringstream os;
  os << "orlicz" << coords.size() << "[";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) os << ",";
    os << coords[i].base().describe();
    if (coords[i].scale() != 1.0) os << "/" << coords[i].scale();
  }
  os << "]";
  return os.str();
}

}  // namespace

OrliczBall::OrliczBall(std::vector<YoungFunction> young, std::vector<double> scales, std::string name) {
  if (young.size() < 2) throw DomainError("Orlicz ball needs dimension n >= 2");
  if (young.size() != scales.size()) throw DomainError("one scale per Young function is required");
  coords_.reserve(young.size());
  for (std::size_t i = 0; i < young.size(); ++i) coords_.emplace_back(std::move(young[i]), scales[i]);
  name_ = name.empty() ? default_name(coords_) : std::move(name);
}

OrliczBall OrliczBall::uniform(std::size_t n, const YoungFunction& f, std::string name) {
  return OrliczBall(std::vector<YoungFunction>(n, f), std::vector<double>(n, 1.0), std::move(name));
}

std::vector<double> OrliczBall::scales() const {
  std::vector<double> s;
  s.reserve(coords_.size());
  for (const auto& c : coords_) s.push_back(c.scale());
  return s;
}

double OrliczBall::modular(Point x) const {
  require_finite(x, dim());
  double sum = 0.0;
  for (std::size_t i = 0; i < coords_.size(); ++i) sum += coords_[i](std::abs(x[i]));
  return sum;
}

double OrliczBall::norm(Point x) const {
  require_finite(x, dim());
  if (std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; })) return 0.0;
  auto excess = [&](double lambda) {
    double sum = 0.0;
    for (std::size_t i = 0; i < coords_.size(); ++i) sum += coords_[i](std::abs(x[i]) / lambda);
    return sum;
  };
  // modular(x / lambda) decreases in lambda; bracket the level set {= 1} geometrically.
  double lo = 1.0;
  double hi = 1.0;
  if (excess(1.0) > 1.0) {
    while (excess(hi) > 1.0) {
      lo = hi;
      hi *= 2.0;
    }
  } else {
    while (excess(lo) <= 1.0) {
      hi = lo;
      lo *= 0.5;
    }
  }
  while (hi - lo > 1e-14 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (excess(mid) > 1.0 ? lo : hi) = mid;
  }
  return hi;
}

std::vector<double> OrliczBall::half_widths() const {
  std::vector<double> w;
  w.reserve(coords_.size());
  for (const auto& c : coords_) w.push_back(c.inverse(1.0));
  return w;
}

OrliczBall OrliczBall::with_scales(std::vector<double> scales) const {
  std::vector<YoungFunction> young;
  young.reserve(coords_.size());
  for (const auto& c : coords_) young.push_back(c.base());
  return OrliczBall(std::move(young), std::move(scales), name_);
}

OrliczBall OrliczBall::renamed(std::string name) const {
  OrliczBall copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

bool OrliczBall::coordinate_symmetric() const {
  for (const auto& c : coords_)
    if (!(c.base() == coords_.front().base()) || c.scale() != coords_.front().scale()) return false;
  return true;
}

bool operator==(const OrliczBall& a, const OrliczBall& b) {
  if (a.dim() != b.dim() || a.name_ != b.name_) return false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (!(a.coords_[i].base() == b.coords_[i].base()) || a.coords_[i].scale() != b.coords_[i].scale())
      return false;
  return true;
}

double CounterexampleBody::norm(Point x) const {
  require_finite(x, 3);
  return std::abs(x[0]) + std::max(std::abs(x[1]), std::abs(x[2]));
}

std::size_t body_dim(const BodyModel& body) {
  return std::visit([](const auto& b) -> std::size_t { return b.dim(); }, body);
}

std::string body_id(const BodyModel& body) {
  return std::visit([](const auto& b) -> std::string { return b.name(); }, body);
}

double body_norm(const BodyModel& body, Point x) {
  return std::visit([&](const auto& b) { return b.norm(x); }, body);
}

bool body_contains(const BodyModel& body, Point x) {
  return std::visit([&](const auto& b) { return b.contains(x); }, body);
}

std::vector<double> bounding_box(const BodyModel& body) {
  return std::visit([](const auto& b) { return b.half_widths(); }, body);
}

}  // namespace orliczcorr
