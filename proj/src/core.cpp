#include "fixiter/core.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fixiter {

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty())
    throw std::invalid_argument("Point: dimension must be >= 1");
  for (double c : coords_)
    if (!std::isfinite(c))
      throw std::invalid_argument("Point: coordinates must be finite");
}

double Point::as_scalar() const {
  if (coords_.size() != 1)
    throw std::invalid_argument("Point::as_scalar: point is not 1-D");
  return coords_[0];
}

BoxDomain::BoxDomain(Point lower, Point upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.dimension() != upper_.dimension())
    throw std::invalid_argument("BoxDomain: lower/upper dimension mismatch");
  for (std::size_t i = 0; i < lower_.dimension(); ++i)
    if (lower_[i] > upper_[i])
      throw std::invalid_argument("BoxDomain: lower_i must be <= upper_i");
}

bool BoxDomain::contains(const Point& p, double tol) const {
  if (p.dimension() != dimension()) return false;
  for (std::size_t i = 0; i < dimension(); ++i)
    if (p[i] < lower_[i] - tol || p[i] > upper_[i] + tol) return false;
  return true;
}

Point BoxDomain::clamp(const Point& p) const {
  if (p.dimension() != dimension())
    throw std::invalid_argument("BoxDomain::clamp: dimension mismatch");
  std::vector<double> c(p.coords());
  for (std::size_t i = 0; i < dimension(); ++i) {
    if (c[i] < lower_[i]) c[i] = lower_[i];
    if (c[i] > upper_[i]) c[i] = upper_[i];
  }
  return Point(std::move(c));
}

Point BoxDomain::midpoint() const {
  std::vector<double> c(dimension());
  for (std::size_t i = 0; i < dimension(); ++i)
    c[i] = 0.5 * (lower_[i] + upper_[i]);
  return Point(std::move(c));
}

ParamSchedule ParamSchedule::constant(double alpha, double beta) {
  if (!(alpha >= 0.0 && alpha <= 1.0) || !(beta >= 0.0 && beta <= 1.0))
    throw std::invalid_argument("ParamSchedule: alpha, beta must lie in [0,1]");
  ParamSchedule s(Kind::constant);
  s.alpha_ = alpha;
  s.beta_ = beta;
  return s;
}

ParamSchedule ParamSchedule::tabulated(std::vector<std::pair<double, double>> rows) {
  if (rows.empty())
    throw std::invalid_argument("ParamSchedule: tabulated schedule must be nonempty");
  for (const auto& [a, b] : rows)
    if (!(a >= 0.0 && a <= 1.0) || !(b >= 0.0 && b <= 1.0))
      throw std::invalid_argument("ParamSchedule: tabulated entries must lie in [0,1]");
  ParamSchedule s(Kind::tabulated);
  s.rows_ = std::move(rows);
  return s;
}

ParamSchedule ParamSchedule::formula(FormulaId id) {
  ParamSchedule s(Kind::formula);
  s.formula_ = id;
  return s;
}

std::pair<double, double> ParamSchedule::at(std::size_t n) const {
  switch (kind_) {
    case Kind::constant:
      return {alpha_, beta_};
    case Kind::tabulated:
      if (n >= rows_.size())
        throw std::invalid_argument("ParamSchedule: index past end of tabulation");
      return rows_[n];
    case Kind::formula: {
      const double m = static_cast<double>(n) + 1.0;
      switch (formula_) {
        case FormulaId::harmonic: {
          const double v = 1.0 / m;
          return {v, v};
        }
        case FormulaId::inv_sqrt: {
          const double v = 1.0 / std::sqrt(m);
          return {v, v};
        }
      }
      break;
    }
  }
  throw std::logic_error("ParamSchedule: unreachable");
}

bool ParamSchedule::divergent_sum_certified() const {
  switch (kind_) {
    case Kind::constant:
      return alpha_ * beta_ > 0.0;
    case Kind::tabulated:
      return false;
    case Kind::formula:
      // harmonic: sum 1/(n+1)^2 converges; inv_sqrt: sum 1/(n+1) diverges.
      return formula_ == FormulaId::inv_sqrt;
  }
  return false;
}

std::string ParamSchedule::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::constant:
      os << "constant(alpha=" << alpha_ << ",beta=" << beta_ << ")";
      break;
    case Kind::tabulated:
      os << "tabulated(" << rows_.size() << " rows)";
      break;
    case Kind::formula:
      os << "formula(" << (formula_ == FormulaId::harmonic ? "harmonic" : "inv_sqrt") << ")";
      break;
  }
  return os.str();
}

namespace detail {
double dist(const double* a, const double* b, std::size_t dim) {
  if (dim == 1) return std::abs(a[0] - b[0]);
  double acc = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}
} // namespace detail

Point convex_combine(double t, const Point& x, const Point& y) {
  if (x.dimension() != y.dimension())
    throw std::invalid_argument("convex_combine: dimension mismatch");
  if (!(t >= 0.0 && t <= 1.0))
    throw std::invalid_argument("convex_combine: t must lie in [0,1]");
  std::vector<double> c(x.dimension());
  for (std::size_t i = 0; i < x.dimension(); ++i)
    c[i] = (1.0 - t) * x[i] + t * y[i];
  return Point(std::move(c));
}

double distance(const Point& x, const Point& y) {
  if (x.dimension() != y.dimension())
    throw std::invalid_argument("distance: dimension mismatch");
  return detail::dist(x.coords().data(), y.coords().data(), x.dimension());
}

double norm(const Point& x) {
  if (x.dimension() == 1) return std::abs(x[0]);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.dimension(); ++i) acc += x[i] * x[i];
  return std::sqrt(acc);
}

} // namespace fixiter
