#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "orliczcorr/correlation.hpp"
#include "orliczcorr/experiments.hpp"
#include "orliczcorr/isotropize.hpp"
#include "orliczcorr/moments.hpp"
#include "orliczcorr/sampling.hpp"

namespace orliczcorr {

using json = nlohmann::json;

/// Shortest decimal that parses back to the same double ("nan", "inf", "-inf" otherwise).
std::string format_double(double v);

json to_json(const QuadratureOptions& o);
json to_json(const FormulaOptions& o);
json to_json(const DirectOptions& o);
json to_json(const CovarianceOptions& o);
json to_json(const CrossMassGrid& g);
json to_json(const SamplerConfig& c);
json to_json(const SamplingDiagnostics& d);
json to_json(const Estimate& e);
json to_json(const CovarianceReport& r);
/// The verdict without its slice table (see slices_csv).
json to_json(const CrossMassVerdict& v);
json to_json(const LogConcavityVerdict& v);
/// Scalars and per-coordinate moments; the covariance matrices are summarized
/// by their largest off-diagonal entry and go in full to cov_sq_csv.
json to_json(const MomentReport& r);
json to_json(const TailReport& r);
json to_json(const CltReport& r);
json to_json(const CounterexampleReport& r);
json to_json(const IsotropizeResult& r);

/// a,b,c,d,y,ybar,z,zbar,margin: one row per grid quadruple a > b, c > d.
std::string margins_csv(const CrossMassVerdict& v);
/// y,z,m: the slice table in long form.
std::string slices_csv(const CrossMassVerdict& v);
/// coordinate,mean,mean_se,m2,m2_se,m4,m4_se,kurtosis_margin,kurtosis_margin_se
std::string moments_csv(const MomentReport& r);
/// i,j,cov_sq,cov_sq_se,cov,cov_se for i < j.
std::string cov_sq_csv(const MomentReport& r);
/// kind,multiple,t,empirical,se,bound,pass with kind "squared" or "norm".
std::string tails_csv(const TailReport& r);
/// direction,l3,weight,statistic,se,ratio
std::string clt_csv(const CltReport& r);
/// chain,index,x1..xn
std::string samples_csv(const SampleBatch& batch);

/// Plot-ready tail curves over a dense log-spaced grid of multiples:
/// kind,multiple,t,empirical,lower,upper,bound (lower/upper = empirical -/+ 2 se).
std::string tail_curve_csv(const Campaign& campaign, std::size_t points = 48);
/// Plot-ready empirical CDF of <X, theta> against N(0, L^2) at `points` quantiles
/// for every direction: direction,t,empirical_cdf,normal_cdf.
std::string clt_curve_csv(const Campaign& campaign, double variance, std::size_t points = 200);

}  // namespace orliczcorr
