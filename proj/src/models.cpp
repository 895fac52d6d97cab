#include "hvlab/models.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <memory>
#include <stdexcept>

#include <fmt/format.h>

namespace hvlab {

namespace {

Outcome coin(double x) { return outcome_if(x < 0.5); }

double anticorrelation_threshold(double theta) { return 0.5 * (1.0 + std::cos(theta)); }

}  // namespace

HvModel local_coin_model() {
  const LambdaSpace space(2);
  return HvModel(
      "local-coin", space, [](Angle, Angle, const LambdaPoint& p) { return coin(p[0]); },
      [](Angle, Angle, const LambdaPoint& p) { return coin(p[1]); }, Distribution::uniform(space),
      Locality::local);
}

HvModel singlet_model() {
  const LambdaSpace space(2);
  return HvModel(
      "singlet", space, [](Angle, Angle, const LambdaPoint& p) { return coin(p[0]); },
      [](Angle a, Angle b, const LambdaPoint& p) {
        const Outcome alice = coin(p[0]);
        return p[1] < anticorrelation_threshold(theta_between(a, b)) ? -alice : alice;
      },
      Distribution::uniform(space), Locality::nonlocal);
}

Distribution biased_distribution(const LambdaSpace& space, double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("bias q must lie in [0, 1]");
  const double low = 2.0 * q;
  const double high = 2.0 * (1.0 - q);
  return Distribution(
      space, [low, high](const LambdaPoint& p) { return p[0] < 0.5 ? low : high; }, std::max(low, high),
      fmt::format("nonequilibrium:q={}", q));
}

Distribution biased_distribution(const HvModel& model, double q) { return biased_distribution(model.space(), q); }

SequentialModel::SequentialModel(std::string name, LambdaSpace space, FirstOutcomeFn first, SecondOutcomeFn second,
                                 Distribution equilibrium)
    : name_(std::move(name)),
      space_(space),
      first_(std::move(first)),
      second_(std::move(second)),
      equilibrium_(std::move(equilibrium)) {
  if (!first_ || !second_) throw std::invalid_argument("sequential model needs both outcome functions");
  if (!(equilibrium_.space() == space_)) {
    throw std::invalid_argument("equilibrium distribution lives on a different space");
  }
}

SequentialModel sequential_singlet_model() {
  const LambdaSpace space(2);
  return SequentialModel(
      "sequential-singlet", space, [](Wing, Angle, const LambdaPoint& p) { return coin(p[0]); },
      [](Wing, Angle own, Angle other, Outcome first, const LambdaPoint& p) {
        return p[1] < anticorrelation_threshold(theta_between(own, other)) ? -first : first;
      },
      Distribution::uniform(space));
}

SequentialModel sequential_local_model() {
  const LambdaSpace space(2);
  auto own_coin = [](Wing w, const LambdaPoint& p) { return coin(w == Wing::alice ? p[0] : p[1]); };
  return SequentialModel(
      "sequential-local", space, [own_coin](Wing w, Angle, const LambdaPoint& p) { return own_coin(w, p); },
      [own_coin](Wing w, Angle, Angle, Outcome, const LambdaPoint& p) { return own_coin(w, p); },
      Distribution::uniform(space));
}

HvModel ordered_view(const SequentialModel& model, Wing first) {
  auto m = std::make_shared<const SequentialModel>(model);
  OutcomeFn alice;
  OutcomeFn bob;
  if (first == Wing::alice) {
    alice = [m](Angle a, Angle, const LambdaPoint& p) { return m->first_outcome(Wing::alice, a, p); };
    bob = [m](Angle a, Angle b, const LambdaPoint& p) {
      return m->second_outcome(Wing::bob, b, a, m->first_outcome(Wing::alice, a, p), p);
    };
  } else {
    bob = [m](Angle, Angle b, const LambdaPoint& p) { return m->first_outcome(Wing::bob, b, p); };
    alice = [m](Angle a, Angle b, const LambdaPoint& p) {
      return m->second_outcome(Wing::alice, a, b, m->first_outcome(Wing::bob, b, p), p);
    };
  }
  return HvModel(fmt::format("{}[{} first]", model.name(), wing_name(first)), model.space(), std::move(alice),
                 std::move(bob), model.equilibrium(), Locality::unknown);
}

NamedModel model_by_name(const std::string& name) {
  if (name == "local-coin") {
    HvModel m = local_coin_model();
    Distribution d = m.equilibrium();
    return {std::move(m), std::move(d)};
  }
  if (name == "singlet") {
    HvModel m = singlet_model();
    Distribution d = m.equilibrium();
    return {std::move(m), std::move(d)};
  }
  if (name == "sequential-singlet") {
    HvModel m = ordered_view(sequential_singlet_model(), Wing::alice);
    Distribution d = m.equilibrium();
    return {std::move(m), std::move(d)};
  }
  constexpr std::string_view kBiasPrefix = "singlet+bias:q=";
  if (name.starts_with(kBiasPrefix)) {
    const std::string text = name.substr(kBiasPrefix.size());
    double q = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), q);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
      throw std::invalid_argument("malformed bias in model name: " + name);
    }
    HvModel m = singlet_model();
    Distribution d = biased_distribution(m, q);
    return {std::move(m), std::move(d)};
  }
  throw std::invalid_argument("unknown model: " + name);
}

}  // namespace hvlab
