#pragma once

#include <array>

#include "hvlab/core.hpp"
#include "hvlab/measure.hpp"
#include "hvlab/models.hpp"

namespace hvlab {

/// Measure of {lambda : outcome of `wing` measured first != outcome of
/// `wing` measured second, after the other wing at setting `other`}.
MeasureEstimate moc_transition_measure(const SequentialModel& model, const Distribution& dist, Angle own,
                                       Angle other, Wing wing, const Scheme& scheme);

/// The model that ordering non-contextuality plus free choice would force:
/// each wing always answers with its first-measured outcome. Tagged local.
HvModel induce_noncontextual(const SequentialModel& model);

struct MocCandidate {
  Wing wing = Wing::alice;
  Angle own;
  Angle other;
  MeasureEstimate moc_measure;
};

struct MocReport {
  AngleQuadruple quadruple;
  /// Pair with the largest ordering transition measure.
  MocCandidate witness;
  /// All eight (wing, own, other) pairs of the quadruple, A side first.
  std::array<MocCandidate, 8> candidates;
  MeasureEstimate induced_sigma_minus;
  double induced_bell_lhs = 0.0;
  double induced_unified = 0.0;
  /// Unified Hardy bound of the singlet statistics at the quadruple.
  double quantum_required = 0.0;

  /// True when the induced model falls short of the quantum requirement.
  bool impossibility_shown() const { return induced_sigma_minus.value < quantum_required; }
};

MocReport moc_demo(const SequentialModel& model, const AngleQuadruple& q, const Scheme& scheme);

}  // namespace hvlab
