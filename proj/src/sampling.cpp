#include "orliczcorr/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "orliczcorr/budget_volume.hpp"
#include "orliczcorr/cross_section.hpp"
#include "orliczcorr/errors.hpp"

namespace orliczcorr {

std::string_view to_string(SamplerMethod m) { return m == SamplerMethod::rejection ? "rejection" : "hit-and-run"; }
std::string_view to_string(DirectionMode d) { return d == DirectionMode::sphere ? "sphere" : "coordinate"; }

SamplerMethod parse_sampler_method(std::string_view s) {
  if (s == "rejection") return SamplerMethod::rejection;
  if (s == "hit-and-run") return SamplerMethod::hit_and_run;
  throw ConfigError("unknown sampler method '" + std::string(s) + "' (rejection | hit-and-run)");
}

DirectionMode parse_direction_mode(std::string_view s) {
  if (s == "sphere") return DirectionMode::sphere;
  if (s == "coordinate") return DirectionMode::coordinate;
  throw ConfigError("unknown direction mode '" + std::string(s) + "' (sphere | coordinate)");
}

SamplerConfig resolve(SamplerConfig config, std::size_t dim) {
  if (config.burn_in == 0) config.burn_in = 10 * dim * dim;
  if (config.thinning == 0) config.thinning = dim;
  if (config.chains == 0) throw ConfigError("sampler needs at least one chain");
  if (config.samples_per_chain == 0) throw ConfigError("sampler needs samples_per_chain >= 1");
  return config;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t chain_seed(std::uint64_t seed, std::size_t chain) { return splitmix64(seed + chain); }

namespace {

using Rng = std::mt19937_64;

constexpr std::size_t kResyncInterval = 4096;

// Walker state for one body type; each exposes
//   bool contains(), coordinate_step(rng), sphere_step(rng), const point().
class OrliczWalker {
 public:
  explicit OrliczWalker(const OrliczBall& ball)
      : ball_(ball), x_(ball.dim(), 0.0), half_(ball.half_widths()), d_(ball.dim()), trial_(ball.dim()) {}

  const std::vector<double>& point() const { return x_; }

  void coordinate_step(Rng& rng, SamplingDiagnostics& diag) {
    const std::size_t n = x_.size();
    const std::size_t i = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    const ScaledYoung& g = ball_.coordinate(i);
    const double rest = modular_ - g(std::abs(x_[i]));
    const double w = g.inverse(std::max(0.0, 1.0 - rest));
    x_[i] = std::uniform_real_distribution<double>(-w, w)(rng);
    modular_ = rest + g(std::abs(x_[i]));
    if (++since_resync_ == kResyncInterval) {
      modular_ = ball_.modular(x_);
      since_resync_ = 0;
    }
    ++diag.steps;
  }

  void sphere_step(Rng& rng, SamplingDiagnostics& diag) {
    std::normal_distribution<double> normal;
    double norm2 = 0.0;
    for (double& v : d_) {
      v = normal(rng);
      norm2 += v * v;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& v : d_) v *= inv;
    const double hi = chord_end(+1.0);
    const double lo = -chord_end(-1.0);
    std::uniform_real_distribution<double> u(lo, hi);
    for (int attempt = 0;; ++attempt) {
      const double t = u(rng);
      for (std::size_t k = 0; k < x_.size(); ++k) trial_[k] = x_[k] + t * d_[k];
      const double m = ball_.modular(trial_);
      if (m <= 1.0 || attempt >= 64) {
        x_.swap(trial_);
        modular_ = m;
        break;
      }
      ++diag.redraws;
    }
    ++diag.steps;
  }

 private:
  // phi(t) = modular(x + sign t d) and its right derivative.
  std::pair<double, double> phi(double t, double sign) const {
    double v = 0.0;
    double dv = 0.0;
    for (std::size_t k = 0; k < x_.size(); ++k) {
      const double dk = sign * d_[k];
      const double u = x_[k] + t * dk;
      const ScaledYoung& g = ball_.coordinate(k);
      const double a = std::abs(u);
      v += g(a);
      const double slope = g.derivative(a);
      dv += u > 0.0 ? slope * dk : (u < 0.0 ? -slope * dk : slope * std::abs(dk));
    }
    return {v, dv};
  }

  // Largest t >= 0 with modular(x + sign t d) <= 1. The modular is convex along
  // the line, so Newton started right of the root (at the bounding-box exit)
  // decreases monotonically onto it.
  double chord_end(double sign) const {
    double t = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < x_.size(); ++k) {
      const double dk = sign * d_[k];
      if (dk > 0.0) t = std::min(t, (half_[k] - x_[k]) / dk);
      if (dk < 0.0) t = std::min(t, (half_[k] + x_[k]) / -dk);
    }
    for (int iter = 0; iter < 100; ++iter) {
      const auto [v, dv] = phi(t, sign);
      const double excess = v - 1.0;
      if (excess <= 1e-14) return t;
      if (!(dv > 0.0)) break;
      const double next = t - excess / dv;
      if (!(next < t)) return t;
      t = std::max(next, 0.0);
    }
    // Fallback: bisection on [0, t].
    double lo = 0.0;
    double hi = t;
    for (int iter = 0; iter < 200 && hi - lo > 1e-15 * hi; ++iter) {
      const double mid = 0.5 * (lo + hi);
      (phi(mid, sign).first <= 1.0 ? lo : hi) = mid;
    }
    return lo;
  }

  const OrliczBall& ball_;
  std::vector<double> x_;
  std::vector<double> half_;
  std::vector<double> d_;
  std::vector<double> trial_;
  double modular_ = 0.0;
  std::size_t since_resync_ = 0;
};

class CounterexampleWalker {
 public:
  const std::vector<double>& point() const { return x_; }

  void coordinate_step(Rng& rng, SamplingDiagnostics& diag) {
    const std::size_t i = std::uniform_int_distribution<std::size_t>(0, 2)(rng);
    const double w = i == 0 ? 1.0 - std::max(std::abs(x_[1]), std::abs(x_[2])) : 1.0 - std::abs(x_[0]);
    x_[i] = std::uniform_real_distribution<double>(-std::max(w, 0.0), std::max(w, 0.0))(rng);
    ++diag.steps;
  }

  void sphere_step(Rng& rng, SamplingDiagnostics& diag) {
    std::normal_distribution<double> normal;
    std::array<double, 3> d{normal(rng), normal(rng), normal(rng)};
    const double inv = 1.0 / std::hypot(d[0], d[1], d[2]);
    for (double& v : d) v *= inv;
    const double hi = chord_end(d, 1.0);
    const double lo = -chord_end(d, -1.0);
    std::uniform_real_distribution<double> u(lo, hi);
    std::array<double, 3> y{};
    for (int attempt = 0;; ++attempt) {
      const double t = u(rng);
      for (std::size_t k = 0; k < 3; ++k) y[k] = x_[k] + t * d[k];
      if (body_.norm(y) <= 1.0 || attempt >= 64) break;
      ++diag.redraws;
    }
    std::copy(y.begin(), y.end(), x_.begin());
    ++diag.steps;
  }

 private:
  // Gauge bisection along the line; the box exit bounds the chord.
  double chord_end(const std::array<double, 3>& d, double sign) const {
    double hi = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < 3; ++k) {
      const double dk = sign * d[k];
      if (dk > 0.0) hi = std::min(hi, (1.0 - x_[k]) / dk);
      if (dk < 0.0) hi = std::min(hi, (1.0 + x_[k]) / -dk);
    }
    double lo = 0.0;
    std::array<double, 3> y{};
    for (int iter = 0; iter < 200 && hi - lo > 1e-15 * hi; ++iter) {
      const double mid = 0.5 * (lo + hi);
      for (std::size_t k = 0; k < 3; ++k) y[k] = x_[k] + sign * mid * d[k];
      (body_.norm(y) <= 1.0 ? lo : hi) = mid;
    }
    return lo;
  }

  CounterexampleBody body_;
  std::vector<double> x_ = std::vector<double>(3, 0.0);
};

template <class Walker>
void run_hit_and_run(Walker walker, const SamplerConfig& cfg, std::size_t chain, const SampleSink& sink,
                     SamplingDiagnostics& diag) {
  Rng rng(chain_seed(cfg.seed, chain));
  auto step = [&] {
    if (cfg.direction == DirectionMode::coordinate)
      walker.coordinate_step(rng, diag);
    else
      walker.sphere_step(rng, diag);
  };
  for (std::size_t k = 0; k < cfg.burn_in; ++k) step();
  for (std::size_t s = 0; s < cfg.samples_per_chain; ++s) {
    for (std::size_t k = 0; k < cfg.thinning; ++k) step();
    sink(chain, s, walker.point());
  }
}

void run_rejection(const BodyModel& body, const SamplerConfig& cfg, std::size_t chain, const SampleSink& sink,
                   SamplingDiagnostics& diag) {
  Rng rng(chain_seed(cfg.seed, chain));
  const auto half = bounding_box(body);
  std::vector<double> x(half.size());
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t s = 0; s < cfg.samples_per_chain; ++s) {
    std::size_t misses = 0;
    while (true) {
      for (std::size_t k = 0; k < x.size(); ++k) x[k] = half[k] * u(rng);
      ++diag.proposals;
      if (body_contains(body, x)) break;
      if (++misses >= cfg.max_rejections) {
        std::ostringstream os;
        os << "rejection sampler: " << misses << " consecutive rejections (retry cap)";
        throw SamplingError(os.str());
      }
    }
    ++diag.accepted;
    sink(chain, s, x);
  }
}

// Refuses rejection sampling when the known volume ratio is hopeless.
void check_acceptance(const BodyModel& body) {
  double box = 1.0;
  for (double h : bounding_box(body)) box *= 2.0 * h;
  double volume = 0.0;
  try {
    volume = total_volume(body);
  } catch (const BudgetError&) {
    return;
  }
  if (volume / box < 1e-6) {
    std::ostringstream os;
    os << "rejection sampler: expected acceptance " << volume / box << " is below 1e-6";
    throw SamplingError(os.str());
  }
}

}  // namespace

SamplingDiagnostics run_sampler(const BodyModel& body, const SamplerConfig& config, const SampleSink& sink) {
  const std::size_t n = body_dim(body);
  const SamplerConfig cfg = resolve(config, n);
  {
    const std::vector<double> origin(n, 0.0);
    if (!(body_norm(body, origin) < 1.0)) throw SamplingError("start point (origin) is not interior");
  }
  if (cfg.method == SamplerMethod::rejection) check_acceptance(body);

  std::vector<SamplingDiagnostics> per_chain(cfg.chains);
  std::vector<std::string> failures(cfg.chains);
  auto run_chain = [&](std::size_t c) {
    try {
      if (cfg.method == SamplerMethod::rejection) {
        run_rejection(body, cfg, c, sink, per_chain[c]);
      } else if (const auto* ball = std::get_if<OrliczBall>(&body)) {
        run_hit_and_run(OrliczWalker(*ball), cfg, c, sink, per_chain[c]);
      } else {
        run_hit_and_run(CounterexampleWalker{}, cfg, c, sink, per_chain[c]);
      }
    } catch (const std::exception& e) {
      failures[c] = e.what();
    }
  };
  if (cfg.execution == Execution::serial) {
    for (std::size_t c = 0; c < cfg.chains; ++c) run_chain(c);
  } else {
    const auto chains = static_cast<std::ptrdiff_t>(cfg.chains);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t c = 0; c < chains; ++c) run_chain(static_cast<std::size_t>(c));
  }
  for (const auto& f : failures)
    if (!f.empty()) throw SamplingError(f);

  SamplingDiagnostics total;
  for (const auto& d : per_chain) {
    total.proposals += d.proposals;
    total.accepted += d.accepted;
    total.steps += d.steps;
    total.redraws += d.redraws;
  }
  total.acceptance_rate =
      cfg.method == SamplerMethod::rejection && total.proposals > 0
          ? static_cast<double>(total.accepted) / static_cast<double>(total.proposals)
          : 1.0;
  return total;
}

SampleBatch sample(const BodyModel& body, const SamplerConfig& config) {
  SampleBatch batch;
  batch.body_id = body_id(body);
  batch.dim = body_dim(body);
  batch.config = resolve(config, batch.dim);
  const std::size_t spc = batch.config.samples_per_chain;
  batch.data.assign(batch.config.chains * spc * batch.dim, 0.0);
  batch.diagnostics = run_sampler(body, batch.config, [&](std::size_t chain, std::size_t index, Point x) {
    std::copy(x.begin(), x.end(), batch.data.begin() + static_cast<std::ptrdiff_t>((chain * spc + index) * batch.dim));
  });
  return batch;
}

}  // namespace orliczcorr
