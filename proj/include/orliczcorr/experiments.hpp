#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "orliczcorr/body.hpp"
#include "orliczcorr/correlation.hpp"
#include "orliczcorr/moments.hpp"
#include "orliczcorr/sampling.hpp"

namespace orliczcorr {

inline constexpr double kSqrt5 = 2.23606797749978969641;

/// One sampling run shared by the sigma, tail and CLT experiments: moments,
/// the per-sample |X|^2 trace and projections onto a set of directions.
struct CampaignConfig {
  SamplerConfig sampler;
  std::vector<std::vector<double>> directions;
  std::vector<std::string> direction_labels;
  std::size_t batches_per_chain = 4;
};

struct Campaign {
  std::string body_id;
  std::size_t dim = 0;
  SamplerConfig sampler;
  SamplingDiagnostics diagnostics;
  MomentReport moments;
  std::size_t batches_per_chain = 4;
  /// Chain-major, like SampleBatch rows.
  std::vector<double> norm2;
  std::vector<std::vector<double>> directions;
  std::vector<std::string> direction_labels;
  std::vector<std::vector<double>> projections;
};

Campaign run_campaign(const BodyModel& body, const CampaignConfig& config);

/// Diagonal (1,...,1)/sqrt(n), e_1 and `random` uniform points of the sphere.
void default_directions(std::size_t n, std::uint64_t seed, std::size_t random, std::vector<std::vector<double>>& out,
                        std::vector<std::string>& labels);

struct SigmaResult {
  MomentReport moments;
  /// sigma - 3 se > sqrt 5
  bool violation = false;
  /// sigma <= sqrt 5 + 3 se
  bool within = true;
};

SigmaResult sigma_result(const Campaign& campaign);

struct TailRow {
  double multiple = 0.0;
  double t = 0.0;
  double empirical = 0.0;
  double se = 0.0;
  double bound = 0.0;
  bool pass = true;
};

struct TailReport {
  std::string body_id;
  std::size_t dim = 0;
  std::size_t samples = 0;
  Estimate l2;
  /// P(| |X|^2/n - L^2 | >= t), t = multiple * L^2, bound 5 L^4 / (n t^2).
  std::vector<TailRow> squared;
  /// P(| |X|/sqrt n - L | >= t), t = multiple * L, bound 5 L^2 / (n t^2).
  std::vector<TailRow> norm;
  double epsilon = 0.0;
  double epsilon_empirical = 0.0;
  double epsilon_se = 0.0;
  bool epsilon_pass = true;
  bool pass = true;
};

inline const std::vector<double> kDefaultTailMultiples{0.25, 0.5, 1.0, 2.0};

/// Empirical tails with binomial standard errors; ContractError on multiples <= 0.
TailReport tail_report(const Campaign& campaign, std::span<const double> multiples = kDefaultTailMultiples);

struct CltDirection {
  std::string label;
  std::vector<double> theta;
  /// ||theta||_3
  double l3 = 0.0;
  /// ||theta||_3^{3/2}
  double weight = 0.0;
  /// sup_t |F_theta(t) - Phi(t / L)|
  double statistic = 0.0;
  double se = 0.0;
  double ratio = 0.0;
};

struct CltReport {
  std::string body_id;
  std::size_t dim = 0;
  std::size_t samples = 0;
  Estimate l2;
  std::vector<CltDirection> directions;
  double c_hat = 0.0;
  std::string c_hat_direction;
};

/// Kolmogorov distance between the sample (sorted in place) and N(0, variance).
double kolmogorov_normal(std::vector<double>& values, double variance);

/// ContractError unless every direction has unit Euclidean norm within 1e-12.
CltReport clt_report(const Campaign& campaign);

/// cov(X_i^2, X_j^2) by the direct slice route for every pair i < j.
struct PairCovariance {
  std::size_t i = 0;
  std::size_t j = 0;
  double cov = 0.0;
  bool converged = true;
};
std::vector<PairCovariance> square_covariances(const OrliczBall& body, const QuadratureOptions& quadrature = {},
                                               const DirectOptions& direct = {});

struct CounterexampleConfig {
  CrossMassGrid grid;
  CovarianceOptions covariance;
  SamplerConfig sampler{SamplerMethod::rejection, DirectionMode::sphere, 1, 0, 0, 8, 125'000};
};

struct CounterexampleReport {
  /// (y, ybar, z, zbar) = (0.8, 0.2, 0.6, 0.1)
  std::array<double, 4> probe{0.8, 0.2, 0.6, 0.1};
  double probe_margin = 0.0;
  /// 4 (1 - y) (max(ybar, zbar) - max(ybar, z))
  double probe_closed_form = 0.0;
  CrossMassVerdict verdict;
  SignVerdict sign = SignVerdict::indeterminate;
  /// Grid quadruples with z > ybar, and how many of them have negative margin.
  std::size_t region_quadruples = 0;
  std::size_t region_negative = 0;
  CovarianceReport covariance;
  Estimate mc_cov;
  std::size_t mc_samples = 0;
  bool pass = false;
};

CounterexampleReport run_counterexample(const CounterexampleConfig& config = {});

}  // namespace orliczcorr
