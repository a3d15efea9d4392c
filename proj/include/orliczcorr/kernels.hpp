#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "orliczcorr/cross_section.hpp"

namespace orliczcorr {

/// Every kernel has a plain serial loop and an OpenMP version. Both produce
/// bit-identical results: work items are evaluated independently and combined
/// in index order, never by a thread-order-dependent reduction.
enum class Execution { serial, parallel };

std::string_view to_string(Execution e);

/// sum_{k < count} term(k), added in index order.
double ordered_sum(std::size_t count, const std::function<double(std::size_t)>& term, Execution exec);

/// Row-major table m(ys[a], zs[c]), size ys.size() * zs.size().
std::vector<double> slice_table(const CrossSection& cs, std::span<const double> ys, std::span<const double> zs,
                                Execution exec);

/// Extremes of the cross-mass margin
///   m(y_a, z_d) m(y_b, z_c) - m(y_a, z_c) m(y_b, z_d),   a > b, c > d
/// over a slice table whose axes increase with the index.
struct MarginScan {
  double min_margin = 0.0;
  double max_margin = 0.0;
  /// Indices (a, b, c, d) of the first quadruple attaining the minimum / maximum.
  std::array<std::size_t, 4> argmin{};
  std::array<std::size_t, 4> argmax{};
  std::size_t quadruples = 0;
  /// Quadruples with margin < -tolerance.
  std::size_t below = 0;
  /// Quadruples with margin > tolerance.
  std::size_t above = 0;
};

inline double crossmass_margin(std::span<const double> table, std::size_t nz, std::size_t a, std::size_t b,
                               std::size_t c, std::size_t d) {
  return table[a * nz + d] * table[b * nz + c] - table[a * nz + c] * table[b * nz + d];
}

MarginScan crossmass_scan(std::span<const double> table, std::size_t ny, std::size_t nz, double tolerance,
                          Execution exec);

/// Sets the OpenMP team size for parallel kernels; 0 keeps the runtime default.
void set_thread_count(int threads);
int thread_count();

}  // namespace orliczcorr
