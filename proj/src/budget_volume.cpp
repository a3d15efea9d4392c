#include "orliczcorr/budget_volume.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>

#include "orliczcorr/errors.hpp"

namespace orliczcorr {

namespace {

// Rough evaluations per adaptive level, used only for the up-front refusal.
constexpr double kEvaluationsPerLevel = 45.0;

}  // namespace

struct BudgetVolume::Cache {
  mutable std::shared_mutex mu;
  std::unordered_map<double, double> values;
  std::atomic<std::uint64_t> hits{0};
  std::atomic<std::uint64_t> misses{0};
};

BudgetVolume::BudgetVolume(std::vector<ScaledYoung> coords, QuadratureOptions options)
    : dimension_(coords.size()), options_(options), cache_(std::make_unique<Cache>()) {
  if (dimension_ > options_.max_dimension) {
    std::ostringstream os;
    os << "budget volume over " << dimension_ << " coordinates exceeds the quadrature dimension cutoff "
       << options_.max_dimension << "; use Monte Carlo";
    throw BudgetError(os.str());
  }
  for (auto& c : coords) {
    if (options_.closed_form_power_groups && c.is_power_law()) {
      const double p = c.exponent();
      has_base_ = true;
      base_log_constant_ += std::log(2.0 * c.power_width()) + std::lgamma(1.0 + 1.0 / p);
      base_exponent_ += 1.0 / p;
    } else {
      recursive_.push_back(std::move(c));
    }
  }
  if (has_base_) base_log_constant_ -= std::lgamma(1.0 + base_exponent_);

  // Piecewise-linear coordinates go innermost: over a power base that level
  // integrates in closed form, and without a base its kinks are known exactly.
  std::stable_partition(recursive_.begin(), recursive_.end(), [](const ScaledYoung& g) {
    return g.base().family() == YoungFamily::piecewise_linear;
  });
  innermost_closed_ = has_base_ && !recursive_.empty() &&
                      recursive_.front().base().family() == YoungFamily::piecewise_linear;

  const std::size_t m = recursive_.size();
  std::size_t levels = has_base_ ? m : (m == 0 ? 0 : m - 1);
  if (innermost_closed_) --levels;
  estimated_cost_ = std::pow(kEvaluationsPerLevel, static_cast<double>(levels));
  if (estimated_cost_ > static_cast<double>(options_.max_evaluations)) {
    std::ostringstream os;
    os << "budget volume needs " << levels << " nested quadrature levels (~" << estimated_cost_
       << " evaluations) which exceeds the evaluation budget " << options_.max_evaluations
       << "; use Monte Carlo";
    throw BudgetError(os.str());
  }
}

BudgetVolume::~BudgetVolume() = default;
BudgetVolume::BudgetVolume(BudgetVolume&&) noexcept = default;
BudgetVolume& BudgetVolume::operator=(BudgetVolume&&) noexcept = default;

double BudgetVolume::piecewise_over_base(double r) const {
  // On a segment g(t) = v0 + s (t - t0):
  //   int C (r - g(t))^e dt = C ((r - v0)^{e+1} - (r - v1)^{e+1}) / (s (e+1)).
  const ScaledYoung& g = recursive_.front();
  const auto& knots = g.base().knots();
  const double e1 = base_exponent_ + 1.0;
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    const double v0 = knots[k].value;
    if (v0 >= r) break;
    const double slope = (knots[k + 1].value - v0) / ((knots[k + 1].t - knots[k].t) * g.scale());
    const bool last = k + 2 == knots.size();
    const double v1 = last ? r : std::min(knots[k + 1].value, r);
    total += (std::pow(r - v0, e1) - std::pow(r - v1, e1)) / (slope * e1);
  }
  return 2.0 * std::exp(base_log_constant_) * total;
}

std::vector<double> BudgetVolume::level_kinks(std::size_t j) const {
  std::vector<double> out;
  if (j == 1 && !has_base_) {
    const ScaledYoung& g = recursive_.front();
    for (double t : g.kinks()) out.push_back(g(t));
  }
  return out;
}

double BudgetVolume::level(std::size_t j, double r, std::uint64_t& evaluations) const {
  if (j == 0 && !has_base_) return r >= 0.0 ? 1.0 : 0.0;
  if (r <= 0.0) return 0.0;
  if (j == 0) return std::exp(base_log_constant_ + base_exponent_ * std::log(r));
  if (j == 1 && innermost_closed_) return piecewise_over_base(r);
  const ScaledYoung& g = recursive_[j - 1];
  const double top = g.inverse(r);
  if (j == 1 && !has_base_) return 2.0 * top;

  if (evaluations > options_.max_evaluations) {
    std::ostringstream os;
    os << "budget volume exceeded " << options_.max_evaluations << " integrand evaluations; use Monte Carlo";
    throw BudgetError(os.str());
  }

  // t = top * (1 - (1 - u)^3) puts the (top - t)^beta endpoint behaviour of the
  // inner volume under a (1 - u)^(3 beta + 2) weight.
  auto integrand = [&](double u) {
    const double w = 1.0 - u;
    const double t = top * (1.0 - w * w * w);
    const double inner = level(j - 1, r - g(t), evaluations);
    return 2.0 * inner * 3.0 * top * w * w;
  };
  std::vector<double> breaks;
  for (double k : g.kinks()) {
    if (k > 0.0 && k < top) breaks.push_back(1.0 - std::cbrt(1.0 - k / top));
  }
  // Where r - g(t) crosses a kink of the inner volume.
  for (double v : level_kinks(j - 1)) {
    if (v <= 0.0 || v >= r) continue;
    const double t = g.inverse(r - v);
    if (t > 0.0 && t < top) breaks.push_back(1.0 - std::cbrt(1.0 - t / top));
  }
  std::sort(breaks.begin(), breaks.end());
  AdaptiveOptions aopt;
  aopt.rel_tol = options_.rel_tol;
  aopt.max_depth = options_.max_depth;
  const auto res = integrate_adaptive_scalar(integrand, 0.0, 1.0, aopt, breaks);
  evaluations += res.evaluations;
  return res.value[0];
}

double BudgetVolume::compute(double r) const {
  std::uint64_t evaluations = 0;
  return level(recursive_.size(), r, evaluations);
}

std::vector<double> BudgetVolume::kinks() const {
  std::vector<double> out;
  if (recursive_.size() == 1 && !has_base_)
    for (double v : level_kinks(1))
      if (v > 0.0 && v < 1.0) out.push_back(v);
  return out;
}

double BudgetVolume::operator()(double r) const {
  if (closed_form()) return compute(r);
  {
    std::shared_lock lock(cache_->mu);
    auto it = cache_->values.find(r);
    if (it != cache_->values.end()) {
      cache_->hits.fetch_add(1, std::memory_order_relaxed);
      return it->second;
    }
  }
  const double v = compute(r);
  cache_->misses.fetch_add(1, std::memory_order_relaxed);
  std::unique_lock lock(cache_->mu);
  cache_->values.emplace(r, v);
  return v;
}

CacheStats BudgetVolume::cache_stats() const {
  CacheStats s;
  s.hits = cache_->hits.load();
  s.misses = cache_->misses.load();
  std::shared_lock lock(cache_->mu);
  s.entries = cache_->values.size();
  return s;
}

}  // namespace orliczcorr
