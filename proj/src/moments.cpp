#include "orliczcorr/moments.hpp"

#include <cmath>

#include "orliczcorr/errors.hpp"

namespace orliczcorr {

namespace {

std::size_t tri(std::size_t n, std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i + 1) / 2 + j;
}

// Flat statistic vector: mean[n] m2[n] m4[n] km[n] l2 norm2 norm4 sigma cov_sq[n*n] cov[n*n].
struct Layout {
  std::size_t n;
  std::size_t mean() const { return 0; }
  std::size_t m2() const { return n; }
  std::size_t m4() const { return 2 * n; }
  std::size_t km() const { return 3 * n; }
  std::size_t l2() const { return 4 * n; }
  std::size_t norm2() const { return 4 * n + 1; }
  std::size_t norm4() const { return 4 * n + 2; }
  std::size_t sigma() const { return 4 * n + 3; }
  std::size_t cov_sq() const { return 4 * n + 4; }
  std::size_t cov() const { return 4 * n + 4 + n * n; }
  std::size_t size() const { return 4 * n + 4 + 2 * n * n; }
};

}  // namespace

MomentAccumulator::MomentAccumulator(std::size_t dim, std::size_t chains, std::size_t samples_per_chain,
                                     std::size_t batches_per_chain)
    : dim_(dim),
      chains_(chains),
      samples_per_chain_(samples_per_chain),
      batches_per_chain_(std::max<std::size_t>(1, std::min(batches_per_chain, samples_per_chain))) {
  if (dim == 0 || chains == 0 || samples_per_chain == 0) throw ContractError("moment accumulator needs data");
  blocks_.resize(chains_ * batches_per_chain_);
  const std::size_t t = dim * (dim + 1) / 2;
  for (auto& b : blocks_) {
    b.s1.assign(dim, 0.0);
    b.s2.assign(dim, 0.0);
    b.s4.assign(dim, 0.0);
    b.s8.assign(dim, 0.0);
    b.p2.assign(t, 0.0);
    b.p1.assign(t, 0.0);
  }
}

std::size_t MomentAccumulator::block_of(std::size_t chain, std::size_t index) const {
  return chain * batches_per_chain_ + index * batches_per_chain_ / samples_per_chain_;
}

void MomentAccumulator::add(std::size_t chain, std::size_t index, Point x) {
  Block& b = blocks_[block_of(chain, index)];
  const std::size_t n = dim_;
  b.count += 1.0;
  double r2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = x[i];
    const double v2 = v * v;
    const double v4 = v2 * v2;
    b.s1[i] += v;
    b.s2[i] += v2;
    b.s4[i] += v4;
    b.s8[i] += v4 * v4;
    r2 += v2;
  }
  b.q2 += r2;
  b.q4 += r2 * r2;
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    const double xi2 = xi * xi;
    double* p2 = b.p2.data() + k;
    double* p1 = b.p1.data() + k;
    for (std::size_t j = i; j < n; ++j) {
      p2[j - i] += xi2 * x[j] * x[j];
      p1[j - i] += xi * x[j];
    }
    k += n - i;
  }
}

namespace {

template <class B>
std::vector<double> statistics(const B& b, std::size_t n) {
  const Layout L{n};
  std::vector<double> s(L.size(), 0.0);
  const double c = b.count;
  for (std::size_t i = 0; i < n; ++i) {
    s[L.mean() + i] = b.s1[i] / c;
    s[L.m2() + i] = b.s2[i] / c;
    s[L.m4() + i] = b.s4[i] / c;
    s[L.km() + i] = 6.0 * s[L.m2() + i] * s[L.m2() + i] - s[L.m4() + i];
  }
  const double e2 = b.q2 / c;
  const double e4 = b.q4 / c;
  s[L.norm2()] = e2;
  s[L.norm4()] = e4;
  s[L.l2()] = e2 / static_cast<double>(n);
  const double var = std::max(0.0, e4 - e2 * e2);
  s[L.sigma()] = e2 > 0.0 ? std::sqrt(static_cast<double>(n) * var) / e2 : 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t t = tri(n, i, j);
      s[L.cov_sq() + i * n + j] = b.p2[t] / c - (b.s2[i] / c) * (b.s2[j] / c);
      s[L.cov() + i * n + j] = b.p1[t] / c - (b.s1[i] / c) * (b.s1[j] / c);
    }
  return s;
}

}  // namespace

MomentReport MomentAccumulator::finish(const std::string& body_id, SamplerMethod method) const {
  const std::size_t n = dim_;
  const Layout L{n};
  Block total;
  total.s1.assign(n, 0.0);
  total.s2.assign(n, 0.0);
  total.s4.assign(n, 0.0);
  total.s8.assign(n, 0.0);
  total.p2.assign(n * (n + 1) / 2, 0.0);
  total.p1.assign(n * (n + 1) / 2, 0.0);
  for (const auto& b : blocks_) {
    total.count += b.count;
    total.q2 += b.q2;
    total.q4 += b.q4;
    for (std::size_t i = 0; i < n; ++i) {
      total.s1[i] += b.s1[i];
      total.s2[i] += b.s2[i];
      total.s4[i] += b.s4[i];
      total.s8[i] += b.s8[i];
    }
    for (std::size_t t = 0; t < total.p2.size(); ++t) {
      total.p2[t] += b.p2[t];
      total.p1[t] += b.p1[t];
    }
  }
  if (total.count == 0.0) throw SamplingError("no samples to estimate moments from");

  const auto value = statistics(total, n);
  std::vector<std::vector<double>> per_block;
  for (const auto& b : blocks_)
    if (b.count > 0.0) per_block.push_back(statistics(b, n));
  const double nb = static_cast<double>(per_block.size());
  std::vector<double> se(L.size(), 0.0);
  if (per_block.size() > 1) {
    for (std::size_t k = 0; k < L.size(); ++k) {
      double mean = 0.0;
      for (const auto& s : per_block) mean += s[k];
      mean /= nb;
      double ss = 0.0;
      for (const auto& s : per_block) ss += (s[k] - mean) * (s[k] - mean);
      se[k] = std::sqrt(ss / (nb * (nb - 1.0)));
    }
  }

  MomentReport r;
  r.body_id = body_id;
  r.dim = n;
  r.samples = static_cast<std::size_t>(total.count);
  r.chains = chains_;
  r.batches = per_block.size();
  r.method = method;

  const double N = total.count;
  if (method == SamplerMethod::rejection) {
    for (std::size_t i = 0; i < n; ++i) {
      const double m2 = total.s2[i] / N;
      const double m4 = total.s4[i] / N;
      const double m8 = total.s8[i] / N;
      const double m1 = total.s1[i] / N;
      se[L.mean() + i] = std::sqrt(std::max(0.0, m2 - m1 * m1) / N);
      se[L.m2() + i] = std::sqrt(std::max(0.0, m4 - m2 * m2) / N);
      se[L.m4() + i] = std::sqrt(std::max(0.0, m8 - m4 * m4) / N);
    }
  } else if (chains_ == 1) {
    for (double& v : se) v *= 2.0;
    r.warnings.push_back("single hit-and-run chain: standard errors doubled (no between-chain variance)");
  }
  if (per_block.size() < 2) r.warnings.push_back("fewer than two batches: standard errors unavailable");

  auto est = [&](std::size_t k) { return Estimate{value[k], se[k]}; };
  for (std::size_t i = 0; i < n; ++i) {
    r.mean.push_back(est(L.mean() + i));
    r.m2.push_back(est(L.m2() + i));
    r.m4.push_back(est(L.m4() + i));
    r.kurtosis_margin.push_back(est(L.km() + i));
  }
  r.l2 = est(L.l2());
  r.norm2 = est(L.norm2());
  r.norm4 = est(L.norm4());
  r.sigma = est(L.sigma());
  const double var = r.norm4.value - r.norm2.value * r.norm2.value;
  r.ess = r.norm2.se > 0.0 ? var / (r.norm2.se * r.norm2.se) : N;
  r.cov_sq.n = r.cov.n = n;
  r.cov_sq.cells.resize(n * n);
  r.cov.cells.resize(n * n);
  for (std::size_t k = 0; k < n * n; ++k) {
    r.cov_sq.cells[k] = est(L.cov_sq() + k);
    r.cov.cells[k] = est(L.cov() + k);
  }
  return r;
}

MomentReport estimate_moments(const SampleBatch& batch, std::size_t batches_per_chain) {
  if (batch.size() == 0) throw SamplingError("empty sample batch");
  const std::size_t chains = batch.config.chains;
  const std::size_t spc = batch.config.samples_per_chain;
  MomentAccumulator acc(batch.dim, chains, spc, batches_per_chain);
  for (std::size_t c = 0; c < chains; ++c)
    for (std::size_t s = 0; s < spc; ++s) acc.add(c, s, batch.row(c * spc + s));
  return acc.finish(batch.body_id, batch.config.method);
}

}  // namespace orliczcorr
