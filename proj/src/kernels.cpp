#include "orliczcorr/kernels.hpp"

#include <omp.h>

#include <limits>

namespace orliczcorr {

std::string_view to_string(Execution e) { return e == Execution::serial ? "serial" : "parallel"; }

void set_thread_count(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

int thread_count() { return omp_get_max_threads(); }

double ordered_sum(std::size_t count, const std::function<double(std::size_t)>& term, Execution exec) {
  if (exec == Execution::serial) {
    double total = 0.0;
    for (std::size_t k = 0; k < count; ++k) total += term(k);
    return total;
  }
  std::vector<double> terms(count);
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t k = 0; k < n; ++k) terms[static_cast<std::size_t>(k)] = term(static_cast<std::size_t>(k));
  double total = 0.0;
  for (double t : terms) total += t;
  return total;
}

std::vector<double> slice_table(const CrossSection& cs, std::span<const double> ys, std::span<const double> zs,
                                Execution exec) {
  const std::size_t ny = ys.size();
  const std::size_t nz = zs.size();
  std::vector<double> table(ny * nz);
  if (exec == Execution::serial) {
    for (std::size_t a = 0; a < ny; ++a)
      for (std::size_t c = 0; c < nz; ++c) table[a * nz + c] = cs(ys[a], zs[c]);
    return table;
  }
  const auto cells = static_cast<std::ptrdiff_t>(ny * nz);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t k = 0; k < cells; ++k) {
    const auto u = static_cast<std::size_t>(k);
    table[u] = cs(ys[u / nz], zs[u % nz]);
  }
  return table;
}

namespace {

// Scan of all quadruples with a fixed first index; folding these rows in
// increasing a reproduces the serial scan exactly.
MarginScan scan_row(std::span<const double> table, std::size_t nz, std::size_t a, double tolerance) {
  MarginScan s;
  s.min_margin = std::numeric_limits<double>::infinity();
  s.max_margin = -std::numeric_limits<double>::infinity();
  for (std::size_t b = 0; b < a; ++b)
    for (std::size_t c = 1; c < nz; ++c)
      for (std::size_t d = 0; d < c; ++d) {
        const double m = crossmass_margin(table, nz, a, b, c, d);
        ++s.quadruples;
        if (m < s.min_margin) {
          s.min_margin = m;
          s.argmin = {a, b, c, d};
        }
        if (m > s.max_margin) {
          s.max_margin = m;
          s.argmax = {a, b, c, d};
        }
        if (m < -tolerance) ++s.below;
        if (m > tolerance) ++s.above;
      }
  return s;
}

void fold(MarginScan& acc, const MarginScan& row) {
  if (row.quadruples == 0) return;
  if (row.min_margin < acc.min_margin) {
    acc.min_margin = row.min_margin;
    acc.argmin = row.argmin;
  }
  if (row.max_margin > acc.max_margin) {
    acc.max_margin = row.max_margin;
    acc.argmax = row.argmax;
  }
  acc.quadruples += row.quadruples;
  acc.below += row.below;
  acc.above += row.above;
}

}  // namespace

MarginScan crossmass_scan(std::span<const double> table, std::size_t ny, std::size_t nz, double tolerance,
                          Execution exec) {
  MarginScan acc;
  acc.min_margin = std::numeric_limits<double>::infinity();
  acc.max_margin = -std::numeric_limits<double>::infinity();
  if (exec == Execution::serial) {
    for (std::size_t a = 1; a < ny; ++a) fold(acc, scan_row(table, nz, a, tolerance));
  } else {
    std::vector<MarginScan> rows(ny);
    const auto n = static_cast<std::ptrdiff_t>(ny);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t a = 1; a < n; ++a)
      rows[static_cast<std::size_t>(a)] = scan_row(table, nz, static_cast<std::size_t>(a), tolerance);
    for (std::size_t a = 1; a < ny; ++a) fold(acc, rows[a]);
  }
  if (acc.quadruples == 0) acc.min_margin = acc.max_margin = 0.0;
  return acc;
}

}  // namespace orliczcorr
