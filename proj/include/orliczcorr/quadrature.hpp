#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace orliczcorr {

template <std::size_t N>
using Vec = std::array<double, N>;

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached n-point rule; safe to call concurrently.
const GaussRule& gauss_legendre(std::size_t n);

struct AdaptiveOptions {
  double rel_tol = 1e-8;
  double abs_tol = 0.0;
  /// Maximum bisection depth of any subinterval.
  int max_depth = 30;
  std::size_t max_intervals = 4000;
};

template <std::size_t N>
struct AdaptiveResult {
  Vec<N> value{};
  Vec<N> error{};
  std::size_t evaluations = 0;
  std::size_t intervals = 0;
  bool converged = true;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod abscissae and weights (QUADPACK qk15).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <std::size_t N>
struct Panel {
  double a = 0.0;
  double b = 0.0;
  int depth = 0;
  Vec<N> value{};
  Vec<N> error{};
  Vec<N> abs_value{};
};

template <std::size_t N, class F>
Panel<N> gk15(F& f, double a, double b, int depth) {
  Panel<N> p;
  p.a = a;
  p.b = b;
  p.depth = depth;
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<Vec<N>, 15> fv;
  fv[0] = f(center);
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv[1 + 2 * j] = f(center - dx);
    fv[2 + 2 * j] = f(center + dx);
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double uflow = std::numeric_limits<double>::min();
  for (std::size_t c = 0; c < N; ++c) {
    const double fc = fv[0][c];
    double resk = fc * kWgk[7];
    double resg = fc * kWg[3];
    double resabs = std::abs(resk);
    for (std::size_t j = 0; j < 7; ++j) {
      const double f1 = fv[1 + 2 * j][c];
      const double f2 = fv[2 + 2 * j][c];
      resk += kWgk[j] * (f1 + f2);
      resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
      if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    const double mean = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - mean);
    for (std::size_t j = 0; j < 7; ++j)
      resasc += kWgk[j] * (std::abs(fv[1 + 2 * j][c] - mean) + std::abs(fv[2 + 2 * j][c] - mean));
    const double ah = std::abs(half);
    double err = std::abs((resk - resg) * half);
    resasc *= ah;
    resabs *= ah;
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > uflow / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    p.value[c] = resk * half;
    p.error[c] = err;
    p.abs_value[c] = resabs;
  }
  return p;
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) integration of a vector-valued f over [a, b].
///
/// The interval is first split at `breaks` (points of non-smoothness); the panel
/// with the worst error-to-tolerance ratio is bisected until every component
/// satisfies err <= max(abs_tol, rel_tol * |I|), or no panel can be split
/// (depth cap / interval cap), in which case `converged` is false.
template <std::size_t N, class F>
AdaptiveResult<N> integrate_adaptive(F&& f, double a, double b, const AdaptiveOptions& opt,
                                     std::span<const double> breaks = {}) {
  AdaptiveResult<N> out;
  if (!(b > a)) return out;
  std::vector<detail::Panel<N>> panels;
  panels.reserve(16);
  double left = a;
  for (double x : breaks) {
    if (x > left && x < b) {
      panels.push_back(detail::gk15<N>(f, left, x, 0));
      left = x;
    }
  }
  panels.push_back(detail::gk15<N>(f, left, b, 0));
  out.evaluations = 15 * panels.size();

  while (true) {
    Vec<N> total{}, err{}, absv{};
    for (const auto& p : panels)
      for (std::size_t c = 0; c < N; ++c) {
        total[c] += p.value[c];
        err[c] += p.error[c];
        absv[c] += p.abs_value[c];
      }
    Vec<N> tol{};
    bool done = true;
    for (std::size_t c = 0; c < N; ++c) {
      tol[c] = std::max({opt.abs_tol, opt.rel_tol * std::abs(total[c]), 1e-15 * absv[c],
                         std::numeric_limits<double>::min()});
      done = done && err[c] <= tol[c];
    }
    out.value = total;
    out.error = err;
    out.intervals = panels.size();
    if (done) return out;

    std::size_t worst = panels.size();
    double worst_ratio = -1.0;
    for (std::size_t k = 0; k < panels.size(); ++k) {
      if (panels[k].depth >= opt.max_depth) continue;
      double ratio = 0.0;
      for (std::size_t c = 0; c < N; ++c) ratio = std::max(ratio, panels[k].error[c] / tol[c]);
      if (ratio > worst_ratio) {
        worst_ratio = ratio;
        worst = k;
      }
    }
    if (worst == panels.size() || panels.size() >= opt.max_intervals) {
      out.converged = false;
      return out;
    }
    const auto p = panels[worst];
    const double mid = 0.5 * (p.a + p.b);
    panels[worst] = detail::gk15<N>(f, p.a, mid, p.depth + 1);
    panels.push_back(detail::gk15<N>(f, mid, p.b, p.depth + 1));
    out.evaluations += 30;
  }
}

/// Scalar convenience wrapper.
template <class F>
AdaptiveResult<1> integrate_adaptive_scalar(F&& f, double a, double b, const AdaptiveOptions& opt,
                                            std::span<const double> breaks = {}) {
  auto wrapped = [&f](double x) { return Vec<1>{f(x)}; };
  return integrate_adaptive<1>(wrapped, a, b, opt, breaks);
}

/// Adaptive integral over [0, top] through t = top (1 - (1 - u)^3), which tames
/// algebraic decay like (top - t)^beta at the right end (slice measures at the
/// support edge). Breaks are given in t.
template <std::size_t N, class F>
AdaptiveResult<N> integrate_to_edge(F&& f, double top, std::span<const double> breaks, const AdaptiveOptions& opt) {
  if (!(top > 0.0)) return {};
  auto mapped = [&](double u) {
    const double w = 1.0 - u;
    auto v = f(top * (1.0 - w * w * w));
    const double jac = 3.0 * top * w * w;
    for (auto& c : v) c *= jac;
    return v;
  };
  std::vector<double> ub;
  for (double b : breaks)
    if (b > 0.0 && b < top) ub.push_back(1.0 - std::cbrt(1.0 - b / top));
  std::sort(ub.begin(), ub.end());
  return integrate_adaptive<N>(mapped, 0.0, 1.0, opt, ub);
}

/// Quintic smoothstep s(u) = u^3 (10 - 15u + 6u^2) and its derivative 30 u^2 (1-u)^2.
/// Composing a rule with it damps algebraic endpoint singularities at both ends.
inline double smoothstep5(double u) { return u * u * u * (10.0 + u * (-15.0 + 6.0 * u)); }
inline double smoothstep5_derivative(double u) {
  const double v = u * (1.0 - u);
  return 30.0 * v * v;
}

/// Fixed-order Gauss-Legendre over [a, b] split at `breaks`, optionally composed
/// with the quintic smoothstep on each piece. Non-adaptive: costs n evaluations per piece.
template <class F>
double integrate_pieces(F&& f, double a, double b, std::span<const double> breaks, std::size_t n,
                        bool smoothing) {
  if (!(b > a)) return 0.0;
  const GaussRule& rule = gauss_legendre(n);
  double total = 0.0;
  auto piece = [&](double lo, double hi) {
    const double half = 0.5 * (hi - lo);
    double sum = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const double u = 0.5 * (rule.nodes[k] + 1.0);
      if (smoothing) {
        const double x = lo + (hi - lo) * smoothstep5(u);
        sum += rule.weights[k] * smoothstep5_derivative(u) * f(x);
      } else {
        sum += rule.weights[k] * f(lo + half * (rule.nodes[k] + 1.0));
      }
    }
    total += half * sum;
  };
  double left = a;
  for (double x : breaks) {
    if (x > left && x < b) {
      piece(left, x);
      left = x;
    }
  }
  piece(left, b);
  return total;
}

}  // namespace orliczcorr
