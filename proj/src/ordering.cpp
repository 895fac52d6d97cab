#include "hvlab/ordering.hpp"

#include <memory>

#include "hvlab/inequalities.hpp"
#include "hvlab/transition.hpp"

namespace hvlab {

MeasureEstimate moc_transition_measure(const SequentialModel& model, const Distribution& dist, Angle own,
                                       Angle other, Wing wing, const Scheme& scheme) {
  if (!(dist.space() == model.space())) throw std::invalid_argument("distribution space does not match the model");
  return estimate_measure(
      dist,
      [&](const LambdaPoint& p) {
        const Outcome companion = model.first_outcome(other_wing(wing), other, p);
        return model.first_outcome(wing, own, p) != model.second_outcome(wing, own, other, companion, p);
      },
      scheme);
}

HvModel induce_noncontextual(const SequentialModel& model) {
  auto m = std::make_shared<const SequentialModel>(model);
  return HvModel(
      model.name() + "[induced]", model.space(),
      [m](Angle a, Angle, const LambdaPoint& p) { return m->first_outcome(Wing::alice, a, p); },
      [m](Angle, Angle b, const LambdaPoint& p) { return m->first_outcome(Wing::bob, b, p); }, model.equilibrium(),
      Locality::local);
}

MocReport moc_demo(const SequentialModel& model, const AngleQuadruple& q, const Scheme& scheme) {
  MocReport rep;
  rep.quadruple = q;
  const std::array<Angle, 2> alice = {q.a, q.a_prime};
  const std::array<Angle, 2> bob = {q.b, q.b_prime};
  std::size_t n = 0;
  for (Wing wing : {Wing::alice, Wing::bob}) {
    const auto& own_settings = wing == Wing::alice ? alice : bob;
    const auto& other_settings = wing == Wing::alice ? bob : alice;
    for (Angle own : own_settings) {
      for (Angle other : other_settings) {
        MocCandidate& c = rep.candidates[n++];
        c.wing = wing;
        c.own = own;
        c.other = other;
        c.moc_measure = moc_transition_measure(model, model.equilibrium(), own, other, wing, scheme);
      }
    }
  }
  rep.witness = rep.candidates.front();
  for (const MocCandidate& c : rep.candidates) {
    if (c.moc_measure.value > rep.witness.moc_measure.value) rep.witness = c;
  }

  const HvModel induced = induce_noncontextual(model);
  const TransitionReport tr = full_report(induced, induced.equilibrium(), q, scheme);
  rep.induced_sigma_minus = tr.sigma_minus;
  const HardyBounds ib = hardy_bounds(stats_from_outcomes(tr.outcomes));
  rep.induced_bell_lhs = ib.bell_lhs;
  rep.induced_unified = ib.unified;
  rep.quantum_required = hardy_bounds(quantum_stats(q)).unified;
  return rep;
}

}  // namespace hvlab
