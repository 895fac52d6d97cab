#include "hvlab/core.hpp"

#include <cmath>

#include "hvlab/random.hpp"

namespace hvlab {

Outcome make_outcome(int v) {
  if (v == 1) return Outcome::plus;
  if (v == -1) return Outcome::minus;
  throw std::invalid_argument("outcome must be +1 or -1");
}

const char* wing_name(Wing w) { return w == Wing::alice ? "A" : "B"; }

LambdaSpace::LambdaSpace(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0 || dimension > kMaxLambdaDimension) {
    throw std::invalid_argument("lambda space dimension must be in [1, 8]");
  }
}

LambdaPoint::LambdaPoint(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0 || dimension > kMaxLambdaDimension) {
    throw std::invalid_argument("lambda point dimension must be in [1, 8]");
  }
}

LambdaPoint::LambdaPoint(std::initializer_list<double> coords)
    : LambdaPoint(std::span<const double>(coords.begin(), coords.size())) {}

LambdaPoint::LambdaPoint(std::span<const double> coords) : LambdaPoint(coords.size()) {
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (!(coords[i] >= 0.0 && coords[i] < 1.0)) {
      throw std::invalid_argument("lambda coordinates must lie in [0, 1)");
    }
    coords_[i] = coords[i];
  }
}

Distribution::Distribution(LambdaSpace space, DensityFn density, double density_bound, std::string label)
    : space_(space), density_(std::move(density)), density_bound_(density_bound), label_(std::move(label)) {
  if (!density_) throw std::invalid_argument("distribution needs a density function");
  if (!(density_bound > 0.0) || !std::isfinite(density_bound)) {
    throw std::invalid_argument("density bound must be positive and finite");
  }
}

Distribution Distribution::uniform(LambdaSpace space) {
  return Distribution(space, [](const LambdaPoint&) { return 1.0; }, 1.0, "equilibrium");
}

double Distribution::density(const LambdaPoint& p) const {
  const double v = density_(p);
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw InvariantViolation("density must be finite and non-negative (" + label_ + ")");
  }
  return v;
}

const char* locality_name(Locality l) {
  switch (l) {
    case Locality::local: return "local";
    case Locality::nonlocal: return "nonlocal";
    case Locality::unknown: return "unknown";
  }
  return "unknown";
}

HvModel::HvModel(std::string name, LambdaSpace space, OutcomeFn outcome_a, OutcomeFn outcome_b,
                 Distribution equilibrium, Locality locality)
    : name_(std::move(name)),
      space_(space),
      outcome_a_(std::move(outcome_a)),
      outcome_b_(std::move(outcome_b)),
      equilibrium_(std::move(equilibrium)),
      locality_(locality) {
  if (!outcome_a_ || !outcome_b_) throw std::invalid_argument("model needs both outcome functions");
  if (!(equilibrium_.space() == space_)) {
    throw std::invalid_argument("equilibrium distribution lives on a different space");
  }
}

std::pair<Outcome, Outcome> evaluate_pair(const HvModel& model, Angle a, Angle b, const LambdaPoint& p) {
  if (p.dimension() != model.space().dimension()) {
    throw std::invalid_argument("lambda dimension does not match the model");
  }
  return {model.outcome_a(a, b, p), model.outcome_b(a, b, p)};
}

void require_same_space(const HvModel& model, const Distribution& dist) {
  if (!(dist.space() == model.space())) {
    throw std::invalid_argument("distribution space does not match the model");
  }
}

namespace {

LambdaPoint probe_point(std::size_t dim, std::uint64_t seed, std::uint64_t index) {
  LambdaPoint p(dim);
  for (std::size_t k = 0; k < dim; ++k) p.set(k, rng::uniform01(seed, rng::probes, index, 8 + k));
  return p;
}

Angle probe_angle(std::uint64_t seed, std::uint64_t index, std::uint64_t slot) {
  return make_angle(kTwoPi * rng::uniform01(seed, rng::probes, index, slot));
}

}  // namespace

bool probe_determinism(const HvModel& model, int probes, std::uint64_t seed) {
  const std::size_t dim = model.space().dimension();
  for (int i = 0; i < probes; ++i) {
    const auto idx = static_cast<std::uint64_t>(i);
    const Angle a = probe_angle(seed, idx, 0);
    const Angle b = probe_angle(seed, idx, 1);
    const LambdaPoint p = probe_point(dim, seed, idx);
    if (evaluate_pair(model, a, b, p) != evaluate_pair(model, a, b, p)) return false;
  }
  return true;
}

bool probe_locality(const HvModel& model, int probes, std::uint64_t seed) {
  const std::size_t dim = model.space().dimension();
  for (int i = 0; i < probes; ++i) {
    const auto idx = static_cast<std::uint64_t>(i);
    const Angle a = probe_angle(seed, idx, 0);
    const Angle b = probe_angle(seed, idx, 1);
    const Angle other = probe_angle(seed, idx, 2);
    const LambdaPoint p = probe_point(dim, seed, idx);
    if (model.outcome_a(a, b, p) != model.outcome_a(a, other, p)) return false;
    if (model.outcome_b(a, b, p) != model.outcome_b(other, b, p)) return false;
  }
  return true;
}

}  // namespace hvlab
