#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fixiter {

/// A point of R^d. Coordinates are binary64 and must be finite;
/// dimension is at least 1.
class Point {
public:
  Point() : coords_{0.0} {}  // the 1-D origin
  explicit Point(std::vector<double> coords);
  static Point scalar(double x) { return Point(std::vector<double>{x}); }

  std::size_t dimension() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<double>& coords() const { return coords_; }

  /// The single coordinate of a 1-D point; throws for d > 1.
  double as_scalar() const;

  bool operator==(const Point& other) const = default;

private:
  std::vector<double> coords_;
};

/// Closed axis-aligned box [lower, upper] in R^d. Nonempty, convex,
/// bounded; lower_i <= upper_i componentwise.
class BoxDomain {
public:
  BoxDomain(Point lower, Point upper);
  static BoxDomain interval(double lo, double hi) {
    return BoxDomain(Point::scalar(lo), Point::scalar(hi));
  }

  std::size_t dimension() const { return lower_.dimension(); }
  const Point& lower() const { return lower_; }
  const Point& upper() const { return upper_; }

  bool contains(const Point& p, double tol = 0.0) const;
  Point clamp(const Point& p) const;
  Point midpoint() const;

private:
  Point lower_;
  Point upper_;
};

/// Closed set of formula schedules; arbitrary user code is not accepted
/// so that every experiment stays deterministic and serializable.
enum class FormulaId {
  harmonic,  // alpha_n = beta_n = 1/(n+1)
  inv_sqrt,  // alpha_n = beta_n = 1/sqrt(n+1); sum of products diverges
};

/// The parameter sequences {alpha_n}, {beta_n} in [0,1] that drive the
/// iteration schemes. Three kinds: constant pair, finite table, or a
/// formula from the closed enum above.
class ParamSchedule {
public:
  static ParamSchedule constant(double alpha, double beta);
  static ParamSchedule tabulated(std::vector<std::pair<double, double>> rows);
  static ParamSchedule formula(FormulaId id);

  /// (alpha_n, beta_n) for step n. Throws std::invalid_argument when n
  /// is past the end of a tabulated schedule.
  std::pair<double, double> at(std::size_t n) const;

  /// True when sum alpha_n * beta_n = infinity is certified analytically
  /// (constant schedules with alpha*beta > 0, and divergent formulas).
  /// Divergence of a general series is not decidable numerically, so
  /// tabulated schedules are never certified.
  bool divergent_sum_certified() const;

  std::string describe() const;

private:
  enum class Kind { constant, tabulated, formula };
  ParamSchedule(Kind k) : kind_(k) {}

  Kind kind_;
  double alpha_ = 0.0;
  double beta_ = 0.0;
  std::vector<std::pair<double, double>> rows_;
  FormulaId formula_ = FormulaId::harmonic;
};

/// (1-t)*x + t*y, computed literally in that order componentwise.
/// The multiplication order is part of the contract: the iteration
/// schemes must reproduce reference tables bit-stably, so no algebraic
/// re-association is allowed here.
Point convex_combine(double t, const Point& x, const Point& y);

/// Euclidean norm of x - y. Exact |a-b| in one dimension.
double distance(const Point& x, const Point& y);

/// Euclidean norm of x.
double norm(const Point& x);

/// (alpha_n, beta_n) for step n of schedule s.
inline std::pair<double, double> schedule_at(const ParamSchedule& s, std::size_t n) {
  return s.at(n);
}

namespace detail {
/// Euclidean distance between two coordinate rows of length dim.
/// Shared by the Point API and the flat-array grid kernels so that a
/// witness found by a kernel re-validates identically through Points.
double dist(const double* a, const double* b, std::size_t dim);
} // namespace detail

} // namespace fixiter
