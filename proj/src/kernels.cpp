#include "fixiter/kernels.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fixiter/core.hpp"

namespace fixiter {

GridEval evaluate_on_grid(const Mapping& m, std::size_t grid_size) {
  if (grid_size < 2)
    throw std::invalid_argument("evaluate_on_grid: grid_size must be >= 2");
  const auto& box = m.domain();
  const std::size_t dim = box.dimension();

  GridEval g;
  g.dim = dim;
  if (dim == 1) {
    const double lo = box.lower()[0], hi = box.upper()[0];
    if (lo == hi)
      throw std::invalid_argument("evaluate_on_grid: degenerate single-point domain");
    g.count = grid_size;
    g.x.resize(g.count);
    for (std::size_t i = 0; i < g.count; ++i)
      g.x[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid_size - 1);
  } else {
    const auto per_axis = static_cast<std::size_t>(
        std::ceil(std::pow(static_cast<double>(grid_size), 1.0 / static_cast<double>(dim))));
    const std::size_t m_axis = per_axis < 2 ? 2 : per_axis;
    std::size_t total = 1;
    for (std::size_t a = 0; a < dim; ++a) total *= m_axis;
    g.count = total;
    g.x.resize(total * dim);
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t rest = idx;
      for (std::size_t a = 0; a < dim; ++a) {
        const std::size_t step = rest % m_axis;
        rest /= m_axis;
        const double lo = box.lower()[a], hi = box.upper()[a];
        g.x[idx * dim + a] =
            lo + (hi - lo) * static_cast<double>(step) / static_cast<double>(m_axis - 1);
      }
    }
  }

  g.tx.resize(g.count * dim);
  for (std::size_t i = 0; i < g.count; ++i) {
    std::vector<double> coords(g.x.begin() + static_cast<std::ptrdiff_t>(i * dim),
                               g.x.begin() + static_cast<std::ptrdiff_t>((i + 1) * dim));
    const Point img = m(Point(std::move(coords)));
    for (std::size_t a = 0; a < dim; ++a) g.tx[i * dim + a] = img[a];
  }
  return g;
}

namespace kernels {

using detail::dist;

bool openmp_enabled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

Exec resolve(Exec requested, std::size_t work_items) {
  if (requested != Exec::Auto) {
    if (requested == Exec::Parallel && !openmp_enabled()) return Exec::Serial;
    return requested;
  }
  if (!openmp_enabled()) return Exec::Serial;
  return work_items >= 1u << 16 ? Exec::Parallel : Exec::Serial;
}

namespace {

constexpr std::size_t kNoWitness = std::numeric_limits<std::size_t>::max();

// Violation predicates, shared verbatim by the serial and parallel scans.

inline bool condition_c_violated_rows(const GridEval& g, std::size_t i, std::size_t j,
                                      double tol) {
  const double d_x_tx = dist(g.x_row(i), g.tx_row(i), g.dim);
  const double d_xy = dist(g.x_row(i), g.x_row(j), g.dim);
  if (!(0.5 * d_x_tx <= d_xy + tol)) return false;  // premise fails
  const double d_tx_ty = dist(g.tx_row(i), g.tx_row(j), g.dim);
  return d_tx_ty > d_xy + tol;
}

inline bool prop1_iii_violated_rows(const GridEval& g, std::size_t i, std::size_t j,
                                    double tol) {
  const double lhs = dist(g.x_row(i), g.tx_row(j), g.dim);
  const double disp = dist(g.tx_row(i), g.x_row(i), g.dim);
  const double d_xy = dist(g.x_row(i), g.x_row(j), g.dim);
  return lhs > 3.0 * disp + d_xy + tol;
}

inline bool nonexpansive_violated_rows(const GridEval& g, std::size_t i, std::size_t j,
                                       double tol) {
  const double d_xy = dist(g.x_row(i), g.x_row(j), g.dim);
  return dist(g.tx_row(i), g.tx_row(j), g.dim) > d_xy + tol;
}

template <typename Violated>
std::size_t first_pair_violation_serial(const GridEval& g, Violated violated) {
  const std::size_t n = g.count;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (violated(i, j)) return i * n + j;
  return kNoWitness;
}

template <typename Violated>
std::size_t first_pair_violation_parallel(const GridEval& g, Violated violated) {
  const std::size_t n = g.count;
  std::size_t best = kNoWitness;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(min : best)
#endif
  for (std::size_t i = 0; i < n; ++i) {
    if (i * n >= best) continue;  // a lower witness already exists
    for (std::size_t j = 0; j < n; ++j) {
      if (violated(i, j)) {
        const std::size_t flat = i * n + j;
        if (flat < best) best = flat;
        break;  // lowest j for this i found
      }
    }
  }
  return best;
}

template <typename Violated>
std::optional<std::pair<std::size_t, std::size_t>>
first_pair_violation(const GridEval& g, Exec exec, Violated violated) {
  const std::size_t n = g.count;
  const Exec mode = resolve(exec, n * n);
  std::size_t flat;
  if (mode == Exec::Parallel)
    flat = first_pair_violation_parallel(g, violated);
  else
    flat = first_pair_violation_serial(g, violated);
  if (flat == kNoWitness) return std::nullopt;
  return std::make_pair(flat / n, flat % n);
}

} // namespace

double max_difference_ratio(const GridEval& g, Exec exec) {
  const std::size_t n = g.count;
  if (n < 2)
    throw std::invalid_argument("max_difference_ratio: need at least two grid points");
  const Exec mode = resolve(exec, n * n / 2);
  double best = 0.0;
  if (mode == Exec::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64) reduction(max : best)
#endif
    for (std::size_t i = 0; i < n; ++i) {
      double local = 0.0;
      for (std::size_t j = i + 1; j < n; ++j) {
        const double den = dist(g.x_row(i), g.x_row(j), g.dim);
        if (den == 0.0) continue;
        const double r = dist(g.tx_row(i), g.tx_row(j), g.dim) / den;
        if (r > local) local = r;
      }
      if (local > best) best = local;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double den = dist(g.x_row(i), g.x_row(j), g.dim);
        if (den == 0.0) continue;
        const double r = dist(g.tx_row(i), g.tx_row(j), g.dim) / den;
        if (r > best) best = r;
      }
  }
  return best;
}

std::optional<std::pair<std::size_t, std::size_t>>
first_condition_c_violation(const GridEval& g, double tol, Exec exec) {
  return first_pair_violation(
      g, exec, [&g, tol](std::size_t i, std::size_t j) {
        return condition_c_violated_rows(g, i, j, tol);
      });
}

std::optional<std::pair<std::size_t, std::size_t>>
first_prop1_iii_violation(const GridEval& g, double tol, Exec exec) {
  return first_pair_violation(
      g, exec, [&g, tol](std::size_t i, std::size_t j) {
        return prop1_iii_violated_rows(g, i, j, tol);
      });
}

std::optional<std::pair<std::size_t, std::size_t>>
first_nonexpansive_violation(const GridEval& g, double tol, Exec exec) {
  return first_pair_violation(
      g, exec, [&g, tol](std::size_t i, std::size_t j) {
        return nonexpansive_violated_rows(g, i, j, tol);
      });
}

std::optional<std::size_t>
first_quasi_nonexpansive_violation(const GridEval& g, std::span<const double> p,
                                   double tol, Exec exec) {
  if (p.size() != g.dim)
    throw std::invalid_argument("first_quasi_nonexpansive_violation: dimension mismatch");
  const std::size_t n = g.count;
  const Exec mode = resolve(exec, n);
  std::size_t best = kNoWitness;
  if (mode == Exec::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(min : best)
#endif
    for (std::size_t i = 0; i < n; ++i) {
      if (dist(g.tx_row(i), p.data(), g.dim) > dist(g.x_row(i), p.data(), g.dim) + tol)
        if (i < best) best = i;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i)
      if (dist(g.tx_row(i), p.data(), g.dim) > dist(g.x_row(i), p.data(), g.dim) + tol) {
        best = i;
        break;
      }
  }
  if (best == kNoWitness) return std::nullopt;
  return best;
}

double max_pointwise_gap(const GridEval& a, const GridEval& b, Exec exec) {
  if (a.count != b.count || a.dim != b.dim)
    throw std::invalid_argument("max_pointwise_gap: grids differ in shape");
  const std::size_t n = a.count;
  const Exec mode = resolve(exec, n);
  double best = 0.0;
  if (mode == Exec::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(max : best)
#endif
    for (std::size_t i = 0; i < n; ++i) {
      const double d = dist(a.tx_row(i), b.tx_row(i), a.dim);
      if (d > best) best = d;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const double d = dist(a.tx_row(i), b.tx_row(i), a.dim);
      if (d > best) best = d;
    }
  }
  return best;
}

} // namespace kernels
} // namespace fixiter
