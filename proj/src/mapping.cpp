#include "fixiter/mapping.hpp"

#include <cmath>
#include <stdexcept>

#include "fixiter/errors.hpp"

namespace fixiter {

namespace {
// Slack for the domain membership test inside operator(): convex
// combinations of box points can land a rounding error outside the box.
constexpr double kDomainSlack = 1e-9;
// Points per axis sampled at construction to verify T(C) is contained in C.
constexpr std::size_t kSelfMapSamples = 257;
} // namespace

Mapping::Mapping(std::string id, BoxDomain domain,
                 std::function<Point(const Point&)> eval,
                 std::optional<double> theta_hint,
                 std::optional<Point> fixed_point_hint)
    : id_(std::move(id)),
      domain_(std::move(domain)),
      eval_(std::move(eval)),
      theta_hint_(theta_hint),
      fixed_point_hint_(std::move(fixed_point_hint)),
      calls_(std::make_shared<std::atomic<std::uint64_t>>(0)) {
  if (!eval_)
    throw std::invalid_argument("Mapping '" + id_ + "': eval function required");
  if (theta_hint_ && !(*theta_hint_ > 0.0 && *theta_hint_ < 1.0))
    throw std::invalid_argument("Mapping '" + id_ + "': theta_hint must lie in (0,1)");
  if (fixed_point_hint_ && !domain_.contains(*fixed_point_hint_, kDomainSlack))
    throw std::invalid_argument("Mapping '" + id_ + "': fixed_point_hint outside domain");

  // Self-map check by sampling; only 1-D domains are sampled densely,
  // higher dimensions use corner + midpoint probes.
  if (domain_.dimension() == 1) {
    const double lo = domain_.lower()[0], hi = domain_.upper()[0];
    for (std::size_t i = 0; i < kSelfMapSamples; ++i) {
      const double x =
          lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(kSelfMapSamples - 1);
      if (!domain_.contains(eval_(Point::scalar(x)), kDomainSlack))
        throw std::invalid_argument("Mapping '" + id_ +
                                    "': eval does not map domain into domain");
    }
  } else {
    if (!domain_.contains(eval_(domain_.midpoint()), kDomainSlack) ||
        !domain_.contains(eval_(domain_.lower()), kDomainSlack) ||
        !domain_.contains(eval_(domain_.upper()), kDomainSlack))
      throw std::invalid_argument("Mapping '" + id_ +
                                  "': eval does not map domain into domain");
  }
}

Point Mapping::operator()(const Point& x) const {
  if (!domain_.contains(x, kDomainSlack))
    throw NumericError("Mapping '" + id_ + "': evaluation point left the domain");
  calls_->fetch_add(1, std::memory_order_relaxed);
  return eval_(x);
}

Mapping make_scalar_mapping(std::string id, double lo, double hi,
                            std::function<double(double)> f,
                            std::optional<double> theta_hint,
                            std::optional<double> fixed_point_hint) {
  std::optional<Point> fp;
  if (fixed_point_hint) fp = Point::scalar(*fixed_point_hint);
  auto eval = [g = std::move(f)](const Point& p) { return Point::scalar(g(p.as_scalar())); };
  return Mapping(std::move(id), BoxDomain::interval(lo, hi), std::move(eval), theta_hint, fp);
}

Mapping builtin_cbrt_map() {
  // sup |T'| on [0,4] is (1/3) * 2^(-2/3), attained at x = 0.
  const double theta = (1.0 / 3.0) * std::pow(2.0, -2.0 / 3.0);
  return make_scalar_mapping(
      "cbrt", 0.0, 4.0, [](double x) { return std::cbrt(x + 2.0); },
      theta, 1.521379706804568);
}

Mapping catalog_mapping(std::string_view id) {
  if (id == "cbrt") return builtin_cbrt_map();
  if (id == "half")
    return make_scalar_mapping("half", 0.0, 1.0, [](double x) { return x / 2.0; }, 0.5, 0.0);
  if (id == "cosine")
    return make_scalar_mapping("cosine", 0.0, 1.0, [](double x) { return std::cos(x); },
                               std::sin(1.0), 0.739085133215161);
  if (id == "identity")
    return make_scalar_mapping("identity", 0.0, 1.0, [](double x) { return x; });
  if (id == "double")
    return make_scalar_mapping("double", 0.0, 1.0,
                               [](double x) { return std::min(2.0 * x, 1.0); },
                               std::nullopt, 0.0);
  throw std::invalid_argument("unknown mapping id '" + std::string(id) +
                              "' (known: cbrt, half, cosine, identity, double)");
}

std::vector<std::string> catalog_ids() {
  return {"cbrt", "half", "cosine", "identity", "double"};
}

} // namespace fixiter
