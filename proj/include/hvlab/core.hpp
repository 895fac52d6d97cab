#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>

#include "hvlab/angle.hpp"

namespace hvlab {

/// Raised when a built-in identity fails beyond tolerance. The CLI maps this
/// to exit code 3.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Outcome : std::int8_t { minus = -1, plus = 1 };

constexpr int value(Outcome o) { return static_cast<int>(o); }
constexpr Outcome outcome_if(bool plus) { return plus ? Outcome::plus : Outcome::minus; }
constexpr Outcome operator-(Outcome o) { return o == Outcome::plus ? Outcome::minus : Outcome::plus; }
constexpr Outcome operator*(Outcome x, Outcome y) { return outcome_if(x == y); }

/// Throws std::invalid_argument unless v is +1 or -1.
Outcome make_outcome(int v);

enum class Wing : std::uint8_t { alice, bob };

constexpr Wing other_wing(Wing w) { return w == Wing::alice ? Wing::bob : Wing::alice; }
const char* wing_name(Wing w);

inline constexpr std::size_t kMaxLambdaDimension = 8;

class LambdaSpace {
 public:
  explicit LambdaSpace(std::size_t dimension);

  std::size_t dimension() const { return dimension_; }

  friend bool operator==(const LambdaSpace&, const LambdaSpace&) = default;

 private:
  std::size_t dimension_;
};

/// A point of the unit hypercube [0,1)^d. Storage is inline so the sweep
/// kernels never allocate per point.
class LambdaPoint {
 public:
  LambdaPoint() = default;
  explicit LambdaPoint(std::size_t dimension);
  LambdaPoint(std::initializer_list<double> coords);
  explicit LambdaPoint(std::span<const double> coords);

  std::size_t dimension() const { return dimension_; }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const { return {coords_.data(), dimension_}; }

  /// Unchecked write used by samplers that already guarantee [0,1).
  void set(std::size_t i, double v) { coords_[i] = v; }

 private:
  std::array<double, kMaxLambdaDimension> coords_{};
  std::size_t dimension_ = 0;
};

using DensityFn = std::function<double(const LambdaPoint&)>;

/// Probability density on [0,1)^d with a known upper bound (needed for
/// rejection sampling in the communication game).
class Distribution {
 public:
  Distribution(LambdaSpace space, DensityFn density, double density_bound, std::string label);

  static Distribution uniform(LambdaSpace space);

  const LambdaSpace& space() const { return space_; }
  double density_bound() const { return density_bound_; }
  const std::string& label() const { return label_; }

  /// Throws InvariantViolation on a negative or non-finite density value.
  double density(const LambdaPoint& p) const;

 private:
  LambdaSpace space_;
  DensityFn density_;
  double density_bound_;
  std::string label_;
};

enum class Locality : std::uint8_t { local, nonlocal, unknown };
const char* locality_name(Locality l);

/// Outcome function signature: (alice setting, bob setting, lambda).
using OutcomeFn = std::function<Outcome(Angle, Angle, const LambdaPoint&)>;

/// Deterministic hidden-variable model: outcome functions A(a,b,lambda),
/// B(a,b,lambda) plus the equilibrium distribution on the same space.
class HvModel {
 public:
  HvModel(std::string name, LambdaSpace space, OutcomeFn outcome_a, OutcomeFn outcome_b,
          Distribution equilibrium, Locality locality);

  const std::string& name() const { return name_; }
  const LambdaSpace& space() const { return space_; }
  const Distribution& equilibrium() const { return equilibrium_; }
  Locality locality() const { return locality_; }

  Outcome outcome_a(Angle a, Angle b, const LambdaPoint& p) const { return outcome_a_(a, b, p); }
  Outcome outcome_b(Angle a, Angle b, const LambdaPoint& p) const { return outcome_b_(a, b, p); }

 private:
  std::string name_;
  LambdaSpace space_;
  OutcomeFn outcome_a_;
  OutcomeFn outcome_b_;
  Distribution equilibrium_;
  Locality locality_;
};

/// (A(a,b,lambda), B(a,b,lambda)). Throws std::invalid_argument when the
/// point's dimension differs from the model's.
std::pair<Outcome, Outcome> evaluate_pair(const HvModel& model, Angle a, Angle b, const LambdaPoint& p);

/// Throws std::invalid_argument if dist lives on a different space.
void require_same_space(const HvModel& model, const Distribution& dist);

/// Evaluates each of `probes` random (angles, lambda) twice; true when every
/// pair agrees.
bool probe_determinism(const HvModel& model, int probes, std::uint64_t seed);

/// For random (a, b, b', lambda) checks A(a,b) == A(a,b') and the mirror
/// condition for B.
bool probe_locality(const HvModel& model, int probes, std::uint64_t seed);

}  // namespace hvlab
