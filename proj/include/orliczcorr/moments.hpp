#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "orliczcorr/body.hpp"
#include "orliczcorr/sampling.hpp"

namespace orliczcorr {

struct Estimate {
  double value = 0.0;
  double se = 0.0;
};

/// Row-major n x n matrix of estimates.
struct EstimateMatrix {
  std::size_t n = 0;
  std::vector<Estimate> cells;
  const Estimate& operator()(std::size_t i, std::size_t j) const { return cells[i * n + j]; }
  Estimate& operator()(std::size_t i, std::size_t j) { return cells[i * n + j]; }
};

struct MomentReport {
  std::string body_id;
  std::size_t dim = 0;
  std::size_t samples = 0;
  std::size_t chains = 0;
  std::size_t batches = 0;
  SamplerMethod method = SamplerMethod::hit_and_run;

  std::vector<Estimate> mean;  // E X_i
  std::vector<Estimate> m2;    // E X_i^2
  std::vector<Estimate> m4;    // E X_i^4
  /// 6 (E X_i^2)^2 - E X_i^4, non-negative for symmetric log-concave marginals.
  std::vector<Estimate> kurtosis_margin;
  /// L_K^2 = E|X|^2 / n
  Estimate l2;
  Estimate norm2;  // E|X|^2
  Estimate norm4;  // E|X|^4
  /// sigma_K = sqrt(n Var|X|^2) / E|X|^2
  Estimate sigma;
  /// Effective sample size of |X|^2 (batch-means variance ratio).
  double ess = 0.0;
  EstimateMatrix cov_sq;  // cov(X_i^2, X_j^2)
  EstimateMatrix cov;     // cov(X_i, X_j)
  std::vector<std::string> warnings;
};

/// Streaming moment sums, split into (chain, batch) blocks for batch-means
/// errors. add() may be called concurrently for different chains.
///
/// Standard errors: batch means over all blocks (hit-and-run); for rejection
/// samples the per-coordinate moments use i.i.d. formulas and the remaining
/// quantities batch means over the (independent) blocks. A single hit-and-run
/// chain has no between-chain information, so its errors are doubled and a
/// warning is attached.
class MomentAccumulator {
 public:
  MomentAccumulator(std::size_t dim, std::size_t chains, std::size_t samples_per_chain,
                    std::size_t batches_per_chain = 4);

  void add(std::size_t chain, std::size_t index, Point x);
  MomentReport finish(const std::string& body_id, SamplerMethod method) const;

 private:
  struct Block {
    double count = 0.0;
    std::vector<double> s1, s2, s4, s8;
    double q2 = 0.0, q4 = 0.0;
    std::vector<double> p2;  // sum x_i^2 x_j^2, upper triangle
    std::vector<double> p1;  // sum x_i x_j, upper triangle
  };
  std::size_t block_of(std::size_t chain, std::size_t index) const;

  std::size_t dim_;
  std::size_t chains_;
  std::size_t samples_per_chain_;
  std::size_t batches_per_chain_;
  std::vector<Block> blocks_;
};

MomentReport estimate_moments(const SampleBatch& batch, std::size_t batches_per_chain = 4);

}  // namespace orliczcorr
