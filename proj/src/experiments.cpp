#include "orliczcorr/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "orliczcorr/errors.hpp"

namespace orliczcorr {

void default_directions(std::size_t n, std::uint64_t seed, std::size_t random, std::vector<std::vector<double>>& out,
                        std::vector<std::string>& labels) {
  out.push_back(std::vector<double>(n, 1.0 / std::sqrt(static_cast<double>(n))));
  labels.push_back("diagonal");
  std::vector<double> e1(n, 0.0);
  e1[0] = 1.0;
  out.push_back(e1);
  labels.push_back("e1");
  std::mt19937_64 rng(splitmix64(seed ^ 0x5eedd1ec7u));
  std::normal_distribution<double> normal;
  for (std::size_t k = 0; k < random; ++k) {
    std::vector<double> v(n);
    double s = 0.0;
    for (double& x : v) {
      x = normal(rng);
      s += x * x;
    }
    for (double& x : v) x /= std::sqrt(s);
    out.push_back(std::move(v));
    labels.push_back("random" + std::to_string(k + 1));
  }
}

Campaign run_campaign(const BodyModel& body, const CampaignConfig& config) {
  Campaign c;
  c.body_id = body_id(body);
  c.dim = body_dim(body);
  c.sampler = resolve(config.sampler, c.dim);
  c.batches_per_chain = config.batches_per_chain;
  c.directions = config.directions;
  c.direction_labels = config.direction_labels;
  c.direction_labels.resize(c.directions.size());
  for (std::size_t k = 0; k < c.directions.size(); ++k) {
    if (c.directions[k].size() != c.dim) throw ContractError("direction dimension does not match the body");
    if (c.direction_labels[k].empty()) c.direction_labels[k] = "direction" + std::to_string(k + 1);
  }

  const std::size_t spc = c.sampler.samples_per_chain;
  const std::size_t total = c.sampler.chains * spc;
  c.norm2.assign(total, 0.0);
  c.projections.assign(c.directions.size(), std::vector<double>(total, 0.0));
  MomentAccumulator acc(c.dim, c.sampler.chains, spc, config.batches_per_chain);
  c.diagnostics = run_sampler(body, c.sampler, [&](std::size_t chain, std::size_t index, Point x) {
    acc.add(chain, index, x);
    const std::size_t row = chain * spc + index;
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    c.norm2[row] = r2;
    for (std::size_t k = 0; k < c.directions.size(); ++k) {
      double dot = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * c.directions[k][i];
      c.projections[k][row] = dot;
    }
  });
  c.moments = acc.finish(c.body_id, c.sampler.method);
  return c;
}

SigmaResult sigma_result(const Campaign& campaign) {
  SigmaResult r;
  r.moments = campaign.moments;
  const auto& s = r.moments.sigma;
  r.violation = s.value - 3.0 * s.se > kSqrt5;
  r.within = s.value <= kSqrt5 + 3.0 * s.se;
  return r;
}

namespace {

double binomial_se(double p, std::size_t n) { return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n)); }

}  // namespace

TailReport tail_report(const Campaign& campaign, std::span<const double> multiples) {
  for (double m : multiples)
    if (!(m > 0.0) || !std::isfinite(m)) throw ContractError("tail thresholds must be positive");
  TailReport r;
  r.body_id = campaign.body_id;
  r.dim = campaign.dim;
  r.samples = campaign.norm2.size();
  r.l2 = campaign.moments.l2;
  const double n = static_cast<double>(campaign.dim);
  const double l2 = r.l2.value;
  const double l = std::sqrt(l2);
  const std::size_t N = r.samples;

  for (double m : multiples) {
    TailRow sq;
    sq.multiple = m;
    sq.t = m * l2;
    TailRow nr;
    nr.multiple = m;
    nr.t = m * l;
    std::size_t hits_sq = 0;
    std::size_t hits_norm = 0;
    for (double r2 : campaign.norm2) {
      if (std::abs(r2 / n - l2) >= sq.t) ++hits_sq;
      if (std::abs(std::sqrt(r2 / n) - l) >= nr.t) ++hits_norm;
    }
    sq.empirical = static_cast<double>(hits_sq) / static_cast<double>(N);
    sq.se = binomial_se(sq.empirical, N);
    sq.bound = 5.0 * l2 * l2 / (n * sq.t * sq.t);
    sq.pass = sq.empirical <= sq.bound + 3.0 * sq.se;
    nr.empirical = static_cast<double>(hits_norm) / static_cast<double>(N);
    nr.se = binomial_se(nr.empirical, N);
    nr.bound = 5.0 * l2 / (n * nr.t * nr.t);
    nr.pass = nr.empirical <= nr.bound + 3.0 * nr.se;
    r.pass = r.pass && sq.pass && nr.pass;
    r.squared.push_back(sq);
    r.norm.push_back(nr);
  }

  r.epsilon = kSqrt5 * std::cbrt(1.0 / n);
  std::size_t hits = 0;
  for (double r2 : campaign.norm2)
    if (std::abs(std::sqrt(r2 / n) - l) >= r.epsilon * l) ++hits;
  r.epsilon_empirical = static_cast<double>(hits) / static_cast<double>(N);
  r.epsilon_se = binomial_se(r.epsilon_empirical, N);
  r.epsilon_pass = r.epsilon_empirical <= r.epsilon;
  r.pass = r.pass && r.epsilon_pass;
  return r;
}

double kolmogorov_normal(std::vector<double>& values, double variance) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const double scale = 1.0 / std::sqrt(2.0 * variance);
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double phi = 0.5 * std::erfc(-values[k] * scale);
    d = std::max({d, static_cast<double>(k + 1) / n - phi, phi - static_cast<double>(k) / n});
  }
  return d;
}

CltReport clt_report(const Campaign& campaign) {
  CltReport r;
  r.body_id = campaign.body_id;
  r.dim = campaign.dim;
  r.samples = campaign.norm2.size();
  r.l2 = campaign.moments.l2;
  const double variance = r.l2.value;
  const std::size_t chains = campaign.sampler.chains;
  const std::size_t spc = campaign.sampler.samples_per_chain;
  const std::size_t per_chain = std::max<std::size_t>(1, std::min(campaign.batches_per_chain, spc));

  for (std::size_t k = 0; k < campaign.directions.size(); ++k) {
    CltDirection d;
    d.label = campaign.direction_labels[k];
    d.theta = campaign.directions[k];
    double s2 = 0.0;
    double s3 = 0.0;
    for (double v : d.theta) {
      s2 += v * v;
      s3 += std::abs(v) * v * v;
    }
    if (std::abs(std::sqrt(s2) - 1.0) > 1e-12) throw ContractError("CLT direction '" + d.label + "' is not a unit vector");
    d.l3 = std::cbrt(s3);
    d.weight = std::pow(d.l3, 1.5);

    std::vector<double> all = campaign.projections[k];
    d.statistic = kolmogorov_normal(all, variance);

    // Batch statistics over the (chain, batch) blocks; the spread of a block
    // statistic shrinks like 1/sqrt(size), so sd / sqrt(B) estimates the full-sample error.
    std::vector<double> stats;
    for (std::size_t c = 0; c < chains; ++c)
      for (std::size_t b = 0; b < per_chain; ++b) {
        const std::size_t lo = c * spc + b * spc / per_chain;
        const std::size_t hi = c * spc + (b + 1) * spc / per_chain;
        std::vector<double> block(campaign.projections[k].begin() + static_cast<std::ptrdiff_t>(lo),
                                  campaign.projections[k].begin() + static_cast<std::ptrdiff_t>(hi));
        stats.push_back(kolmogorov_normal(block, variance));
      }
    if (stats.size() > 1) {
      double mean = 0.0;
      for (double s : stats) mean += s;
      mean /= static_cast<double>(stats.size());
      double ss = 0.0;
      for (double s : stats) ss += (s - mean) * (s - mean);
      const double nb = static_cast<double>(stats.size());
      d.se = std::sqrt(ss / (nb - 1.0)) / std::sqrt(nb);
    }
    d.ratio = d.statistic / d.weight;
    if (d.ratio > r.c_hat) {
      r.c_hat = d.ratio;
      r.c_hat_direction = d.label;
    }
    r.directions.push_back(std::move(d));
  }
  return r;
}

std::vector<PairCovariance> square_covariances(const OrliczBall& body, const QuadratureOptions& quadrature,
                                               const DirectOptions& direct) {
  std::vector<PairCovariance> out;
  const auto sq = UnivariateTestFn::square();
  for (std::size_t i = 0; i < body.dim(); ++i)
    for (std::size_t j = i + 1; j < body.dim(); ++j) {
      const CrossSection cs(body, i, j, quadrature);
      const auto d = cov_direct(cs, sq, sq, direct);
      out.push_back({i, j, d.cov, d.converged});
    }
  return out;
}

CounterexampleReport run_counterexample(const CounterexampleConfig& config) {
  CounterexampleReport r;
  const BodyModel body = CounterexampleBody{};
  const CrossSection cs(body, 1, 2, config.covariance.quadrature);
  const auto [y, ybar, z, zbar] = r.probe;
  r.probe_margin = crossmass_margin(cs, y, ybar, z, zbar);
  r.probe_closed_form = 4.0 * (1.0 - y) * (std::max(ybar, zbar) - std::max(ybar, z));

  r.verdict = crossmass_check(cs, config.grid);
  r.sign = sign_verdict(r.verdict);
  const std::size_t nz = r.verdict.zs.size();
  for (std::size_t a = 1; a < r.verdict.ys.size(); ++a)
    for (std::size_t b = 0; b < a; ++b)
      for (std::size_t c = 1; c < nz; ++c)
        for (std::size_t d = 0; d < c; ++d) {
          if (!(r.verdict.zs[c] > r.verdict.ys[b])) continue;
          ++r.region_quadruples;
          if (crossmass_margin(r.verdict.table, nz, a, b, c, d) < -config.grid.tolerance) ++r.region_negative;
        }

  const auto sq = UnivariateTestFn::square();
  r.covariance = covariance_report(body, 1, 2, sq, sq, config.covariance);

  const auto cfg = resolve(config.sampler, 3);
  MomentAccumulator acc(3, cfg.chains, cfg.samples_per_chain);
  run_sampler(body, cfg, [&](std::size_t c, std::size_t k, Point x) { acc.add(c, k, x); });
  const auto moments = acc.finish(body_id(body), cfg.method);
  r.mc_cov = moments.cov_sq(1, 2);
  r.mc_samples = moments.samples;

  r.pass = !r.verdict.holds && r.verdict.min_margin < -1e-3 && r.sign == SignVerdict::nonnegative &&
           r.covariance.value_direct > 0.0 && r.covariance.value_formula > 0.0 &&
           r.mc_cov.value - 2.0 * r.mc_cov.se > 0.0;
  return r;
}

}  // namespace orliczcorr
