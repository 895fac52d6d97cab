#pragma once

#include <array>
#include <numbers>

namespace hvlab {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Detector setting in radians, always stored in [0, 2*pi).
class Angle {
 public:
  constexpr Angle() = default;

  constexpr double radians() const { return radians_; }

  friend constexpr bool operator==(Angle, Angle) = default;

 private:
  explicit constexpr Angle(double normalized) : radians_(normalized) {}
  friend Angle make_angle(double radians);

  double radians_ = 0.0;
};

/// Wraps any finite value into [0, 2*pi). Throws std::invalid_argument on
/// NaN or infinity.
Angle make_angle(double radians);

/// Raw difference x - y of the stored representatives. Only cos() of the
/// result is consumed downstream, so no canonical branch is chosen.
double theta_between(Angle x, Angle y);

/// The four settings {a, a', b, b'}. Repeated angles are allowed.
struct AngleQuadruple {
  Angle a;
  Angle a_prime;
  Angle b;
  Angle b_prime;

  friend constexpr bool operator==(const AngleQuadruple&, const AngleQuadruple&) = default;
};

AngleQuadruple make_quadruple(double a, double a_prime, double b, double b_prime);

/// Chain configuration a-b = b-a' = a'-b' = theta, a-b' = 3*theta, realised
/// as b' = 0, a' = theta, b = 2*theta, a = 3*theta.
AngleQuadruple chain_quadruple(double theta);

/// Contexts in fixed order: 0 = (a,b), 1 = (a',b), 2 = (a',b'), 3 = (a,b').
inline constexpr int kContexts = 4;

struct ContextSettings {
  Angle alice;
  Angle bob;
};

ContextSettings context_settings(const AngleQuadruple& q, int context);

/// Names used in reports: "a,b", "a',b", "a',b'", "a,b'".
const char* context_name(int context);

}  // namespace hvlab
