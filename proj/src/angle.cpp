#include "hvlab/angle.hpp"

#include <cmath>
#include <stdexcept>

namespace hvlab {

Angle make_angle(double radians) {
  if (!std::isfinite(radians)) {
    throw std::invalid_argument("angle must be finite");
  }
  double r = std::fmod(radians, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // r + 2pi can round up to exactly 2pi for tiny negative inputs.
  if (r >= kTwoPi) r = 0.0;
  return Angle(r);
}

double theta_between(Angle x, Angle y) { return x.radians() - y.radians(); }

AngleQuadruple make_quadruple(double a, double a_prime, double b, double b_prime) {
  return {make_angle(a), make_angle(a_prime), make_angle(b), make_angle(b_prime)};
}

AngleQuadruple chain_quadruple(double theta) {
  return make_quadruple(3.0 * theta, theta, 2.0 * theta, 0.0);
}

ContextSettings context_settings(const AngleQuadruple& q, int context) {
  switch (context) {
    case 0: return {q.a, q.b};
    case 1: return {q.a_prime, q.b};
    case 2: return {q.a_prime, q.b_prime};
    case 3: return {q.a, q.b_prime};
    default: throw std::out_of_range("context index must be in [0, 4)");
  }
}

const char* context_name(int context) {
  static constexpr const char* kNames[kContexts] = {"a,b", "a',b", "a',b'", "a,b'"};
  if (context < 0 || context >= kContexts) throw std::out_of_range("context index must be in [0, 4)");
  return kNames[context];
}

}  // namespace hvlab
