#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fixiter/mapping.hpp"

namespace fixiter {

/// Cached evaluation of a mapping on a uniform lattice over its domain.
/// The O(N^2) property scans below run on these flat arrays only; no
/// mapping evaluation happens inside a pair loop.
struct GridEval {
  std::size_t count = 0;  // number of lattice points
  std::size_t dim = 0;
  std::vector<double> x;   // count*dim, row-major
  std::vector<double> tx;  // T applied to each row

  const double* x_row(std::size_t i) const { return x.data() + i * dim; }
  const double* tx_row(std::size_t i) const { return tx.data() + i * dim; }
};

/// Uniform lattice with grid_size points in 1-D (endpoints included).
/// For d > 1 the lattice uses ceil(grid_size^(1/d)) points per axis, so
/// count may exceed grid_size. Requires grid_size >= 2.
GridEval evaluate_on_grid(const Mapping& m, std::size_t grid_size);

namespace kernels {

/// Every kernel has a serial reference implementation and an
/// OpenMP-parallel one. Results are identical: max-reductions are
/// order-independent, and witness selection always returns the lowest
/// flattened pair index. Auto picks Parallel for large scans when
/// OpenMP is compiled in.
enum class Exec { Serial, Parallel, Auto };

bool openmp_enabled();
Exec resolve(Exec requested, std::size_t work_items);

/// max over distinct pairs (i < j) of ||Tx_i - Tx_j|| / ||x_i - x_j||.
double max_difference_ratio(const GridEval& g, Exec exec = Exec::Auto);

/// Lowest-index ordered pair (i, j), diagonal included, violating
///   1/2 ||x - Tx|| <= ||x - y|| + tol  implies  ||Tx - Ty|| <= ||x - y|| + tol.
std::optional<std::pair<std::size_t, std::size_t>>
first_condition_c_violation(const GridEval& g, double tol, Exec exec = Exec::Auto);

/// Lowest-index ordered pair (i, j), diagonal included, violating
///   ||x - Ty|| <= 3 ||Tx - x|| + ||x - y|| + tol.
std::optional<std::pair<std::size_t, std::size_t>>
first_prop1_iii_violation(const GridEval& g, double tol, Exec exec = Exec::Auto);

/// Lowest-index ordered pair (i, j) violating ||Tx - Ty|| <= ||x - y|| + tol.
std::optional<std::pair<std::size_t, std::size_t>>
first_nonexpansive_violation(const GridEval& g, double tol, Exec exec = Exec::Auto);

/// Lowest index i violating ||Tx_i - p|| <= ||x_i - p|| + tol.
std::optional<std::size_t>
first_quasi_nonexpansive_violation(const GridEval& g, std::span<const double> p,
                                   double tol, Exec exec = Exec::Auto);

/// max over i of ||Ta(x_i) - Tb(x_i)|| for two grids over the same lattice.
double max_pointwise_gap(const GridEval& a, const GridEval& b, Exec exec = Exec::Auto);

} // namespace kernels
} // namespace fixiter
