#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fixiter/core.hpp"

namespace fixiter {

/// A deterministic self-map of a compact box domain, with an optional
/// known contraction modulus and an optional reference fixed point.
///
/// Construction samples the domain and rejects maps whose image leaves
/// it (a configuration error). Instances are immutable after
/// construction; evaluation is pure apart from a shared call counter
/// used by tests to verify per-step evaluation counts.
class Mapping {
public:
  Mapping(std::string id, BoxDomain domain,
          std::function<Point(const Point&)> eval,
          std::optional<double> theta_hint = std::nullopt,
          std::optional<Point> fixed_point_hint = std::nullopt);

  const std::string& id() const { return id_; }
  const BoxDomain& domain() const { return domain_; }
  std::optional<double> theta_hint() const { return theta_hint_; }
  const std::optional<Point>& fixed_point_hint() const { return fixed_point_hint_; }

  /// Evaluate T(x). Throws NumericError when x lies outside the domain
  /// (beyond a small slack), which signals a mis-registered mapping or
  /// an iteration escaping the box.
  Point operator()(const Point& x) const;

  std::uint64_t eval_calls() const { return calls_->load(std::memory_order_relaxed); }
  void reset_eval_calls() const { calls_->store(0, std::memory_order_relaxed); }

private:
  std::string id_;
  BoxDomain domain_;
  std::function<Point(const Point&)> eval_;
  std::optional<double> theta_hint_;
  std::optional<Point> fixed_point_hint_;
  std::shared_ptr<std::atomic<std::uint64_t>> calls_;
};

/// Convenience constructor for 1-D maps given a scalar function.
Mapping make_scalar_mapping(std::string id, double lo, double hi,
                            std::function<double(double)> f,
                            std::optional<double> theta_hint = std::nullopt,
                            std::optional<double> fixed_point_hint = std::nullopt);

/// T(x) = (x+2)^(1/3) on [0,4]. Contraction; fixed point near 1.5214.
Mapping builtin_cbrt_map();

/// Built-in catalog, addressed by id so that CLI experiments stay
/// reproducible without code injection. Ids: cbrt, half, cosine,
/// identity, double. Throws std::invalid_argument for unknown ids.
///
/// `double` is the doubling map clamped to its box, min(2x, 1) on
/// [0,1]: expansive on [0, 1/2], so it supplies reproducible
/// counterexamples for every property check while still being a
/// self-map. Its reference fixed point is 0.
Mapping catalog_mapping(std::string_view id);

std::vector<std::string> catalog_ids();

} // namespace fixiter
