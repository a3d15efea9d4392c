#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "orliczcorr/body.hpp"
#include "orliczcorr/cross_section.hpp"
#include "orliczcorr/kernels.hpp"
#include "orliczcorr/test_functions.hpp"

namespace orliczcorr {

/// Fixed-order nested Gauss-Legendre for the four-fold integral.
struct FormulaOptions {
  std::size_t gauss_points = 24;
  Execution execution = Execution::parallel;
};

/// Adaptive Gauss-Kronrod for the two-dimensional slice integrals.
struct DirectOptions {
  double rel_tol = 1e-10;
  int max_depth = 40;
  std::size_t max_intervals = 2000;
};

struct CovarianceOptions {
  FormulaOptions formula;
  DirectOptions direct;
  QuadratureOptions quadrature;
};

/// 16 * int_{y > ybar > 0, z > zbar > 0}
///   (m(y,z) m(ybar,zbar) - m(y,zbar) m(ybar,z)) (f(y) - f(ybar)) (g(z) - g(zbar)),
/// which equals |K|^2 cov(f(Y), g(Z)) for the raw slice measure m.
///
/// Split as T1 - T2: T1 integrates m(y,z) against a nested rectangle integral
/// over [0,y] x [0,z]; T2 factorizes into two one-dimensional integrals per
/// outer (ybar, zbar). Every level uses exact support limits, breaks at kinks
/// and a quintic smoothstep on each piece.
double cov_via_formula(const CrossSection& cs, const UnivariateTestFn& f, const UnivariateTestFn& g,
                       const FormulaOptions& options = {});

struct DirectCovariance {
  /// Probability-normalized cov(f(Y), g(Z)).
  double cov = 0.0;
  double volume = 0.0;
  double mean_f = 0.0;
  double mean_g = 0.0;
  double mean_fg = 0.0;
  /// Estimated absolute error of the four quadrant integrals (max over components, relative).
  double rel_error = 0.0;
  bool converged = true;
  std::size_t evaluations = 0;
};

/// E f(Y), E g(Z), E f(Y) g(Z) and |K| from the slice measure over the positive quadrant.
DirectCovariance cov_direct(const CrossSection& cs, const UnivariateTestFn& f, const UnivariateTestFn& g,
                            const DirectOptions& options = {});

struct CovarianceReport {
  std::string body_id;
  std::size_t i = 0;
  std::size_t j = 1;
  std::string f;
  std::string g;
  double value_formula = 0.0;
  /// |K|^2 * cov
  double value_direct = 0.0;
  double cov = 0.0;
  double volume = 0.0;
  double mean_f = 0.0;
  double mean_g = 0.0;
  double mean_fg = 0.0;
  double floor = 0.0;
  double relative_discrepancy = 0.0;
  bool direct_converged = true;
  double direct_rel_error = 0.0;
  CovarianceOptions options;
};

/// Both routes on one pair. f and g must be symmetric (they are by construction).
CovarianceReport covariance_report(const BodyModel& body, std::size_t i, std::size_t j, const UnivariateTestFn& f,
                                   const UnivariateTestFn& g, const CovarianceOptions& options = {});

/// Grid for the cross-mass and sign checks: along each axis
///   t_k = T (1 - gap^{(k/N)^2}),  k = 1..N,
/// with T the slice extent, so points crowd toward the boundary where slices vanish.
struct CrossMassGrid {
  std::size_t points = 24;
  double gap = 1e-3;
  double tolerance = 1e-9;
  Execution execution = Execution::parallel;
};

std::vector<double> crossmass_axis(double extent, const CrossMassGrid& grid);

struct CrossMassVerdict {
  std::string body_id;
  std::size_t i = 0;
  std::size_t j = 1;
  CrossMassGrid grid;
  std::vector<double> ys;
  std::vector<double> zs;
  /// Row-major m(ys[a], zs[c]).
  std::vector<double> table;
  double min_margin = 0.0;
  double max_margin = 0.0;
  /// (y, ybar, z, zbar) at the minimum.
  std::array<double, 4> worst{};
  std::array<double, 4> best{};
  std::size_t quadruples = 0;
  std::size_t violations = 0;
  std::size_t positive = 0;
  bool holds = true;
};

/// Margin m(y,zbar) m(ybar,z) - m(y,z) m(ybar,zbar) at one quadruple.
double crossmass_margin(const CrossSection& cs, double y, double ybar, double z, double zbar);

CrossMassVerdict crossmass_check(const CrossSection& cs, const CrossMassGrid& grid = {});

enum class SignVerdict { nonpositive, nonnegative, indeterminate };

std::string_view to_string(SignVerdict v);

/// Grid-level sufficient condition for the sign of cov(f(Y), g(Z)).
/// Requires f and g flagged monotone (ContractError otherwise).
SignVerdict sign_verdict(const CrossSection& cs, const UnivariateTestFn& f, const UnivariateTestFn& g,
                         const CrossMassGrid& grid = {});
SignVerdict sign_verdict(const CrossMassVerdict& verdict);

/// |P_{a+b}| |P_{a+c}| >= |P_a| |P_{a+b+c}| with |P_a| = V(1 - a), over
/// a = i/G, b = j/G, c = k/G, i >= 0, j, k >= 1, a + b + c <= 1.
struct LogConcavityVerdict {
  std::size_t grid = 40;
  double tolerance = 1e-9;
  std::size_t triples = 0;
  std::size_t violations = 0;
  /// min over triples of (lhs - rhs) / V(1)^2
  double min_margin = 0.0;
  std::array<double, 3> worst{};
  bool holds = true;
};

LogConcavityVerdict logconcavity_check(const BudgetVolume& v, std::size_t grid = 40, double tolerance = 1e-9);

}  // namespace orliczcorr
