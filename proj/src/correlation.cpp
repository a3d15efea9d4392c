#include "orliczcorr/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "orliczcorr/errors.hpp"
#include "orliczcorr/quadrature.hpp"

namespace orliczcorr {

namespace {

struct Node {
  double x;
  double w;
};

template <class... Lists>
std::vector<double> merged(const Lists&... lists) {
  std::vector<double> out;
  (out.insert(out.end(), lists.begin(), lists.end()), ...);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Smoothstep-composed Gauss-Legendre nodes on [lo, hi] split at the breaks inside it.
void append_nodes(std::vector<Node>& out, double lo, double hi, const std::vector<double>& breaks,
                  const GaussRule& rule) {
  if (!(hi > lo)) return;
  auto piece = [&](double a, double b) {
    const double len = b - a;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const double u = 0.5 * (rule.nodes[k] + 1.0);
      out.push_back({a + len * smoothstep5(u), 0.5 * len * rule.weights[k] * smoothstep5_derivative(u)});
    }
  };
  double left = lo;
  for (double b : breaks) {
    if (b > left && b < hi) {
      piece(left, b);
      left = b;
    }
  }
  piece(left, hi);
}

std::vector<Node> nodes(double lo, double hi, const std::vector<double>& breaks, const GaussRule& rule) {
  std::vector<Node> out;
  append_nodes(out, lo, hi, breaks, rule);
  return out;
}

}  // namespace

double cov_via_formula(const CrossSection& cs, const UnivariateTestFn& f, const UnivariateTestFn& g,
                       const FormulaOptions& options) {
  if (options.gauss_points < 2) throw ContractError("formula route needs at least 2 Gauss points");
  const GaussRule& rule = gauss_legendre(options.gauss_points);
  const auto fk = f.kinks();
  const auto gk = g.kinks();
  const double ymax = cs.y_max();
  const std::vector<double> zero{0.0};

  // Edge crossings of the test-function kinks make T2 kink in the outer variables too.
  const auto outer_y = nodes(0.0, ymax, merged(cs.y_breaks(zero), fk, cs.y_breaks(gk)), rule);
  const auto z_edge_kinks = cs.z_breaks(fk);

  // Outer (y, z) nodes over the support; shared by T1 and (with renaming) T2.
  struct Outer {
    double y, z, w;
  };
  std::vector<Outer> outer;
  for (const Node& ny : outer_y) {
    const double top = cs.z_extent(ny.x);
    const std::vector<double> level{ny.x};
    for (const Node& nz : nodes(0.0, top, merged(cs.z_kinks(ny.x), cs.z_breaks(level), gk, z_edge_kinks), rule))
      outer.push_back({ny.x, nz.x, ny.w * nz.w});
  }

  // T1: m(y,z) * int_0^y int_0^z m(yb,zb) (f(y) - f(yb)) (g(z) - g(zb)).
  auto t1_term = [&](std::size_t k) {
    const auto [y, z, w] = outer[k];
    const double myz = cs(y, z);
    if (myz == 0.0) return 0.0;
    const double fy = f(y);
    const double gz = g(z);
    const std::vector<double> levels{0.0, z};
    double inner = 0.0;
    for (const Node& nyb : nodes(0.0, y, merged(cs.y_breaks(levels), fk), rule)) {
      const double df = fy - f(nyb.x);
      if (df == 0.0) continue;
      double row = 0.0;
      for (const Node& nzb : nodes(0.0, z, merged(cs.z_kinks(nyb.x), gk), rule))
        row += nzb.w * cs(nyb.x, nzb.x) * (gz - g(nzb.x));
      inner += nyb.w * df * row;
    }
    return w * myz * inner;
  };

  // T2: int_{yb}^{Y(zb)} m(y,zb) (f(y) - f(yb)) dy * int_{zb}^{Z(yb)} m(yb,z) (g(z) - g(zb)) dz.
  auto t2_term = [&](std::size_t k) {
    const auto [yb, zb, w] = outer[k];
    const double fyb = f(yb);
    const double gzb = g(zb);
    double a = 0.0;
    for (const Node& ny : nodes(yb, cs.y_extent(zb), merged(cs.y_kinks(zb), fk), rule))
      a += ny.w * cs(ny.x, zb) * (f(ny.x) - fyb);
    if (a == 0.0) return 0.0;
    double b = 0.0;
    for (const Node& nz : nodes(zb, cs.z_extent(yb), merged(cs.z_kinks(yb), gk), rule))
      b += nz.w * cs(yb, nz.x) * (g(nz.x) - gzb);
    return w * a * b;
  };

  const double t1 = ordered_sum(outer.size(), t1_term, options.execution);
  const double t2 = ordered_sum(outer.size(), t2_term, options.execution);
  return 16.0 * (t1 - t2);
}

DirectCovariance cov_direct(const CrossSection& cs, const UnivariateTestFn& f, const UnivariateTestFn& g,
                            const DirectOptions& options) {
  AdaptiveOptions outer_opt;
  outer_opt.rel_tol = options.rel_tol;
  outer_opt.max_depth = options.max_depth;
  outer_opt.max_intervals = options.max_intervals;
  AdaptiveOptions inner_opt = outer_opt;
  inner_opt.rel_tol = std::max(options.rel_tol * 1e-2, 1e-14);

  const auto fk = f.kinks();
  const auto gk = g.kinks();
  const std::vector<double> zero{0.0};
  std::size_t evaluations = 0;
  bool converged = true;

  auto outer = [&](double y) -> Vec<4> {
    auto inner = [&](double z) -> Vec<2> {
      const double m = cs(y, z);
      return {m, m * g(z)};
    };
    const auto r = integrate_to_edge<2>(inner, cs.z_extent(y), merged(cs.z_kinks(y), gk), inner_opt);
    evaluations += r.evaluations;
    converged = converged && r.converged;
    const double fy = f(y);
    return {r.value[0], fy * r.value[0], r.value[1], fy * r.value[1]};
  };
  const auto res = integrate_to_edge<4>(outer, cs.y_max(), merged(cs.y_breaks(zero), fk), outer_opt);

  DirectCovariance out;
  const double m = res.value[0];
  if (!(m > 0.0)) throw DomainError("cross section has zero mass");
  out.volume = 4.0 * m;
  out.mean_f = res.value[1] / m;
  out.mean_g = res.value[2] / m;
  out.mean_fg = res.value[3] / m;
  out.cov = out.mean_fg - out.mean_f * out.mean_g;
  out.converged = converged && res.converged;
  out.evaluations = evaluations + res.evaluations;
  for (std::size_t c = 0; c < 4; ++c)
    if (res.value[c] != 0.0) out.rel_error = std::max(out.rel_error, res.error[c] / std::abs(res.value[c]));
  return out;
}

CovarianceReport covariance_report(const BodyModel& body, std::size_t i, std::size_t j, const UnivariateTestFn& f,
                                   const UnivariateTestFn& g, const CovarianceOptions& options) {
  const CrossSection cs(body, i, j, options.quadrature);
  CovarianceReport r;
  r.body_id = body_id(body);
  r.i = i;
  r.j = j;
  r.f = f.describe();
  r.g = g.describe();
  r.options = options;
  const auto d = cov_direct(cs, f, g, options.direct);
  r.value_formula = cov_via_formula(cs, f, g, options.formula);
  r.cov = d.cov;
  r.volume = d.volume;
  r.mean_f = d.mean_f;
  r.mean_g = d.mean_g;
  r.mean_fg = d.mean_fg;
  r.direct_converged = d.converged;
  r.direct_rel_error = d.rel_error;
  const double v2 = d.volume * d.volume;
  r.value_direct = v2 * d.cov;
  r.floor = std::max(1e-12 * v2 * std::max(std::abs(d.mean_fg), std::abs(d.mean_f * d.mean_g)),
                     std::numeric_limits<double>::min());
  r.relative_discrepancy = std::abs(r.value_formula - r.value_direct) / std::max(std::abs(r.value_direct), r.floor);
  return r;
}

std::vector<double> crossmass_axis(double extent, const CrossMassGrid& grid) {
  if (grid.points < 2) throw ContractError("cross-mass grid needs at least 2 points per axis");
  if (!(grid.gap > 0.0 && grid.gap < 1.0)) throw ContractError("cross-mass grid gap must lie in (0, 1)");
  std::vector<double> out(grid.points);
  const double n = static_cast<double>(grid.points);
  for (std::size_t k = 1; k <= grid.points; ++k) {
    const double s = static_cast<double>(k) / n;
    out[k - 1] = extent * -std::expm1(s * s * std::log(grid.gap));
  }
  return out;
}

double crossmass_margin(const CrossSection& cs, double y, double ybar, double z, double zbar) {
  return cs(y, zbar) * cs(ybar, z) - cs(y, z) * cs(ybar, zbar);
}

CrossMassVerdict crossmass_check(const CrossSection& cs, const CrossMassGrid& grid) {
  CrossMassVerdict v;
  v.body_id = cs.body_id();
  v.i = cs.pair().first;
  v.j = cs.pair().second;
  v.grid = grid;
  v.ys = crossmass_axis(cs.y_max(), grid);
  v.zs = crossmass_axis(cs.z_max(), grid);
  v.table = slice_table(cs, v.ys, v.zs, grid.execution);
  const auto scan = crossmass_scan(v.table, v.ys.size(), v.zs.size(), grid.tolerance, grid.execution);
  v.min_margin = scan.min_margin;
  v.max_margin = scan.max_margin;
  v.worst = {v.ys[scan.argmin[0]], v.ys[scan.argmin[1]], v.zs[scan.argmin[2]], v.zs[scan.argmin[3]]};
  v.best = {v.ys[scan.argmax[0]], v.ys[scan.argmax[1]], v.zs[scan.argmax[2]], v.zs[scan.argmax[3]]};
  v.quadruples = scan.quadruples;
  v.violations = scan.below;
  v.positive = scan.above;
  v.holds = scan.below == 0;
  return v;
}

std::string_view to_string(SignVerdict v) {
  switch (v) {
    case SignVerdict::nonpositive: return "nonpositive";
    case SignVerdict::nonnegative: return "nonnegative";
    case SignVerdict::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

SignVerdict sign_verdict(const CrossMassVerdict& verdict) {
  const bool nonpositive = verdict.min_margin >= -verdict.grid.tolerance;
  const bool nonnegative = verdict.max_margin <= verdict.grid.tolerance;
  if (nonpositive && !nonnegative) return SignVerdict::nonpositive;
  if (nonnegative && !nonpositive) return SignVerdict::nonnegative;
  return SignVerdict::indeterminate;
}

SignVerdict sign_verdict(const CrossSection& cs, const UnivariateTestFn& f, const UnivariateTestFn& g,
                         const CrossMassGrid& grid) {
  if (!f.monotone() || !g.monotone())
    throw ContractError("sign verdict needs test functions non-decreasing on [0, inf)");
  return sign_verdict(crossmass_check(cs, grid));
}

LogConcavityVerdict logconcavity_check(const BudgetVolume& v, std::size_t grid, double tolerance) {
  if (grid < 3) throw ContractError("log-concavity grid needs at least 3 steps");
  LogConcavityVerdict out;
  out.grid = grid;
  out.tolerance = tolerance;
  std::vector<double> p(grid + 1);
  for (std::size_t k = 0; k <= grid; ++k) p[k] = v(1.0 - static_cast<double>(k) / static_cast<double>(grid));
  const double scale = p[0] * p[0];
  out.min_margin = std::numeric_limits<double>::infinity();
  const double gd = static_cast<double>(grid);
  for (std::size_t a = 0; a < grid; ++a)
    for (std::size_t b = 1; a + b <= grid; ++b)
      for (std::size_t c = 1; a + b + c <= grid; ++c) {
        const double margin = (p[a + b] * p[a + c] - p[a] * p[a + b + c]) / scale;
        ++out.triples;
        if (margin < out.min_margin) {
          out.min_margin = margin;
          out.worst = {static_cast<double>(a) / gd, static_cast<double>(b) / gd, static_cast<double>(c) / gd};
        }
        if (margin < -tolerance) ++out.violations;
      }
  if (out.triples == 0) out.min_margin = 0.0;
  out.holds = out.violations == 0;
  return out;
}

}  // namespace orliczcorr
