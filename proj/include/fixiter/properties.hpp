#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>

#include "fixiter/kernels.hpp"
#include "fixiter/mapping.hpp"

namespace fixiter {

enum class MapProperty {
  contraction,
  nonexpansive,
  quasi_nonexpansive,
  condition_C,
  prop1_iii,
};

std::string_view to_string(MapProperty p);

/// Outcome of a grid-based property check. These are samplers, not
/// proofs: pass means no violation was found among samples_checked
/// evaluations of the defining inequality; fail carries the first
/// (lowest grid index) witness, which re-validates through the public
/// re-evaluation helpers below.
struct PropertyReport {
  MapProperty property;
  bool passed = false;
  std::optional<std::pair<Point, Point>> witness;  // present iff !passed
  std::size_t samples_checked = 0;
  std::optional<double> estimated_modulus;
};

/// Default lattice density for 1-D property checks.
inline constexpr std::size_t kDefaultGridSize = 10000;

/// Slack applied to every inequality check, two orders above binary64
/// rounding at the catalog maps' scale.
inline constexpr double kPropertyTolerance = 1e-12;

/// max over distinct grid pairs of ||Tx - Ty|| / ||x - y||: a lower
/// bound on the Lipschitz constant that converges to it as the grid is
/// refined.
double estimate_contraction_modulus(const Mapping& m,
                                    std::size_t grid_size = kDefaultGridSize,
                                    kernels::Exec exec = kernels::Exec::Auto);

/// Checks 1/2 ||x-Tx|| <= ||x-y|| implies ||Tx-Ty|| <= ||x-y|| on all
/// ordered grid pairs (diagonal included).
PropertyReport check_condition_c(const Mapping& m,
                                 std::size_t grid_size = kDefaultGridSize,
                                 kernels::Exec exec = kernels::Exec::Auto);

/// Checks ||Tx-Ty|| <= ||x-y|| on all ordered grid pairs.
PropertyReport check_nonexpansive(const Mapping& m,
                                  std::size_t grid_size = kDefaultGridSize,
                                  kernels::Exec exec = kernels::Exec::Auto);

/// Checks ||Tx - p|| <= ||x - p|| for all grid x. Requires p to be a
/// fixed point of m within kPropertyTolerance. The witness pair is
/// (x, p).
PropertyReport check_quasi_nonexpansive(const Mapping& m, const Point& p,
                                        std::size_t grid_size = kDefaultGridSize,
                                        kernels::Exec exec = kernels::Exec::Auto);

/// Checks ||x - Ty|| <= 3 ||Tx - x|| + ||x - y|| on all ordered grid
/// pairs. Guaranteed for condition-(C) maps; on others the check simply
/// reports whatever the grid finds.
PropertyReport check_prop1_iii(const Mapping& m,
                               std::size_t grid_size = kDefaultGridSize,
                               kernels::Exec exec = kernels::Exec::Auto);

/// Witness re-evaluation helpers: true when the pair/point violates the
/// defining inequality at tolerance tol.
bool condition_c_violated(const Mapping& m, const Point& x, const Point& y, double tol);
bool nonexpansive_violated(const Mapping& m, const Point& x, const Point& y, double tol);
bool quasi_nonexpansive_violated(const Mapping& m, const Point& x, const Point& p, double tol);
bool prop1_iii_violated(const Mapping& m, const Point& x, const Point& y, double tol);

/// Independent fixed-point oracle: Picard iteration to a machine fixed
/// point, with a bisection fallback on T(x) - x for 1-D maps. Returns p
/// with ||T(p) - p|| <= tol; throws NumericError when no such point is
/// found within the iteration caps (the map may not be a contraction).
/// Deliberately shares no code with the iteration schemes it is used to
/// check.
Point fixed_point_reference(const Mapping& m, double tol);

} // namespace fixiter
