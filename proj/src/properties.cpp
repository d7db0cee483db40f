#include "fixiter/properties.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fixiter/core.hpp"
#include "fixiter/errors.hpp"

namespace fixiter {

namespace {

Point grid_point(const GridEval& g, std::size_t i) {
  std::vector<double> c(g.x_row(i), g.x_row(i) + g.dim);
  return Point(std::move(c));
}

} // namespace

std::string_view to_string(MapProperty p) {
  switch (p) {
    case MapProperty::contraction: return "contraction";
    case MapProperty::nonexpansive: return "nonexpansive";
    case MapProperty::quasi_nonexpansive: return "quasi_nonexpansive";
    case MapProperty::condition_C: return "condition_C";
    case MapProperty::prop1_iii: return "prop1_iii";
  }
  return "?";
}

double estimate_contraction_modulus(const Mapping& m, std::size_t grid_size,
                                    kernels::Exec exec) {
  const GridEval g = evaluate_on_grid(m, grid_size);
  return kernels::max_difference_ratio(g, exec);
}

PropertyReport check_condition_c(const Mapping& m, std::size_t grid_size,
                                 kernels::Exec exec) {
  const GridEval g = evaluate_on_grid(m, grid_size);
  PropertyReport rep;
  rep.property = MapProperty::condition_C;
  rep.samples_checked = g.count * g.count;
  const auto w = kernels::first_condition_c_violation(g, kPropertyTolerance, exec);
  rep.passed = !w.has_value();
  if (w) rep.witness = std::make_pair(grid_point(g, w->first), grid_point(g, w->second));
  return rep;
}

PropertyReport check_nonexpansive(const Mapping& m, std::size_t grid_size,
                                  kernels::Exec exec) {
  const GridEval g = evaluate_on_grid(m, grid_size);
  PropertyReport rep;
  rep.property = MapProperty::nonexpansive;
  rep.samples_checked = g.count * g.count;
  const auto w = kernels::first_nonexpansive_violation(g, kPropertyTolerance, exec);
  rep.passed = !w.has_value();
  if (w) rep.witness = std::make_pair(grid_point(g, w->first), grid_point(g, w->second));
  return rep;
}

PropertyReport check_quasi_nonexpansive(const Mapping& m, const Point& p,
                                        std::size_t grid_size, kernels::Exec exec) {
  if (distance(m(p), p) > kPropertyTolerance)
    throw std::invalid_argument("check_quasi_nonexpansive: p is not a fixed point of '" +
                                m.id() + "'");
  const GridEval g = evaluate_on_grid(m, grid_size);
  PropertyReport rep;
  rep.property = MapProperty::quasi_nonexpansive;
  rep.samples_checked = g.count;
  const auto w = kernels::first_quasi_nonexpansive_violation(
      g, std::span<const double>(p.coords()), kPropertyTolerance, exec);
  rep.passed = !w.has_value();
  if (w) rep.witness = std::make_pair(grid_point(g, *w), p);
  return rep;
}

PropertyReport check_prop1_iii(const Mapping& m, std::size_t grid_size,
                               kernels::Exec exec) {
  const GridEval g = evaluate_on_grid(m, grid_size);
  PropertyReport rep;
  rep.property = MapProperty::prop1_iii;
  rep.samples_checked = g.count * g.count;
  const auto w = kernels::first_prop1_iii_violation(g, kPropertyTolerance, exec);
  rep.passed = !w.has_value();
  if (w) rep.witness = std::make_pair(grid_point(g, w->first), grid_point(g, w->second));
  return rep;
}

bool condition_c_violated(const Mapping& m, const Point& x, const Point& y, double tol) {
  const Point tx = m(x);
  const double d_x_tx = distance(x, tx);
  const double d_xy = distance(x, y);
  if (!(0.5 * d_x_tx <= d_xy + tol)) return false;
  return distance(tx, m(y)) > d_xy + tol;
}

bool nonexpansive_violated(const Mapping& m, const Point& x, const Point& y, double tol) {
  return distance(m(x), m(y)) > distance(x, y) + tol;
}

bool quasi_nonexpansive_violated(const Mapping& m, const Point& x, const Point& p,
                                 double tol) {
  return distance(m(x), p) > distance(x, p) + tol;
}

bool prop1_iii_violated(const Mapping& m, const Point& x, const Point& y, double tol) {
  return distance(x, m(y)) > 3.0 * distance(m(x), x) + distance(x, y) + tol;
}

Point fixed_point_reference(const Mapping& m, double tol) {
  if (!(tol >= 0.0))
    throw std::invalid_argument("fixed_point_reference: tol must be >= 0");

  constexpr std::size_t kMaxPicard = 200000;

  // Picard iteration from the domain midpoint, tracking the smallest
  // residual seen. Stops on exact stall or a bitwise 2-cycle.
  Point x = m.domain().midpoint();
  Point best = x;
  double best_res = distance(m(x), x);
  std::optional<Point> prev;
  for (std::size_t n = 0; n < kMaxPicard && best_res > tol; ++n) {
    Point next = m(x);
    const double res = distance(m(next), next);
    if (res < best_res) {
      best_res = res;
      best = next;
    }
    if (next == x) break;                 // exact fixed point
    if (prev && next == *prev) break;     // 2-cycle at machine precision
    prev = x;
    x = std::move(next);
  }
  if (best_res <= tol) return best;

  // Scalar fallback: bisection on f(x) = T(x) - x over a sign-change cell.
  if (m.domain().dimension() == 1) {
    const double lo = m.domain().lower()[0], hi = m.domain().upper()[0];
    const auto f = [&m](double t) { return m(Point::scalar(t)).as_scalar() - t; };
    constexpr std::size_t kScanCells = 4096;
    double a = lo, fa = f(a);
    for (std::size_t i = 1; i <= kScanCells; ++i) {
      const double b = lo + (hi - lo) * static_cast<double>(i) / kScanCells;
      const double fb = f(b);
      if (fa == 0.0) return Point::scalar(a);
      if ((fa < 0.0) != (fb < 0.0)) {
        double left = a, right = b, fleft = fa;
        for (int it = 0; it < 200 && right - left > 0.0; ++it) {
          const double mid = 0.5 * (left + right);
          if (mid <= left || mid >= right) break;
          const double fmid = f(mid);
          if (fmid == 0.0) return Point::scalar(mid);
          if ((fmid < 0.0) == (fleft < 0.0)) {
            left = mid;
            fleft = fmid;
          } else {
            right = mid;
          }
        }
        const double cand =
            std::abs(f(left)) <= std::abs(f(right)) ? left : right;
        if (std::abs(f(cand)) <= tol) return Point::scalar(cand);
      }
      a = b;
      fa = fb;
    }
  }
  throw NumericError("fixed_point_reference: no fixed point found for '" + m.id() +
                     "' within tolerance; the map may not be a contraction");
}

} // namespace fixiter
