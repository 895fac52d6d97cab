#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>

#include "hvlab/core.hpp"
#include "hvlab/measure.hpp"

namespace hvlab {

/// The four nonlocal transition sets of a quadruple.
///   b_at_b        T^{a<->a'}_b  : B(a,b)  != B(a',b)
///   b_at_b_prime  T^{a<->a'}_b' : B(a,b') != B(a',b')
///   a_at_a        T^a_{b<->b'}  : A(a,b)  != A(a,b')
///   a_at_a_prime  T^a'_{b<->b'} : A(a',b) != A(a',b')
enum class TransitionSetId : std::uint8_t { b_at_b = 0, b_at_b_prime = 1, a_at_a = 2, a_at_a_prime = 3 };

inline constexpr std::array<TransitionSetId, 4> kTransitionSets = {
    TransitionSetId::b_at_b, TransitionSetId::b_at_b_prime, TransitionSetId::a_at_a, TransitionSetId::a_at_a_prime};

inline constexpr int index_of(TransitionSetId id) { return static_cast<int>(id); }

/// Wing whose outcome changes inside the set.
inline constexpr Wing responding_wing(TransitionSetId id) {
  return index_of(id) < 2 ? Wing::bob : Wing::alice;
}

/// Report name, e.g. "T^{a<->a'}_b".
const char* set_name(TransitionSetId id);

/// All eight outcomes of one lambda: alice[i], bob[i] in context i.
struct ContextOutcomes {
  std::array<Outcome, kContexts> alice{};
  std::array<Outcome, kContexts> bob{};

  Outcome product(int context) const { return alice[context] * bob[context]; }

  /// 8-bit code: bit 2i = alice[i] is +1, bit 2i+1 = bob[i] is +1.
  std::uint8_t code() const;
  static ContextOutcomes from_code(std::uint8_t code);

  friend bool operator==(const ContextOutcomes&, const ContextOutcomes&) = default;
};

ContextOutcomes evaluate_contexts(const HvModel& model, const AngleQuadruple& q, const LambdaPoint& p);

/// Outcomes of the responding wing under the two swapped settings, in the
/// order the set is written: (B(a,.), B(a',.)) or (A(.,b), A(.,b')).
std::pair<Outcome, Outcome> set_outcome_pair(const ContextOutcomes& o, TransitionSetId id);

struct MembershipVector {
  std::array<bool, 4> in_set{};
  std::array<Outcome, kContexts> sign_pattern{};

  int count() const;
  /// bit i set iff in_set[i].
  std::uint8_t mask() const;
  Outcome sign_product() const;

  friend bool operator==(const MembershipVector&, const MembershipVector&) = default;
};

MembershipVector memberships_of(const ContextOutcomes& o);
MembershipVector classify_lambda(const HvModel& model, const AngleQuadruple& q, const LambdaPoint& p);

// Membership masks. Every lambda falls in exactly one of the 16 masks.
// T1..T4 are the exactly-three regions (missing set moving through the
// order T^{a<->a'}_b, T^a'_{b<->b'}, T^{a<->a'}_b', T^a_{b<->b'}), T5..T8 the
// exactly-one regions in the order T^a_{b<->b'}, T^{a<->a'}_b',
// T^a'_{b<->b'}, T^{a<->a'}_b. E1..E6 are the exactly-two regions, F is
// all four, O is none.
inline constexpr int kMasks = 16;

/// Mask of escape region T_k, k in [1, 8].
std::uint8_t escape_region_mask(int k);
/// k in [1, 8] for an odd mask, 0 otherwise.
int escape_region_of(std::uint8_t mask);
/// Mask of exactly-two region E_k, k in [1, 6].
std::uint8_t pair_region_mask(int k);
/// "T1".."T8", "E1".."E6", "F" or "O".
std::string region_label(std::uint8_t mask);

struct PartitionMeasure {
  MeasureEstimate plus_minus;
  MeasureEstimate minus_plus;
};

struct TransitionReport {
  AngleQuadruple quadruple;
  Scheme scheme;
  std::string model_name;
  std::string distribution_label;
  std::array<MeasureEstimate, 4> set_measures;
  std::array<PartitionMeasure, 4> partitions;
  std::array<MeasureEstimate, kMasks> mask_measures;
  /// Measure of odd transition-set membership.
  MeasureEstimate sigma_minus;
  /// Measure of negative four-context sign product; equals sigma_minus.
  MeasureEstimate sigma_minus_by_sign;
  /// 256-bucket histogram keyed by ContextOutcomes::code().
  SweepResult outcomes;

  const MeasureEstimate& escape_region(int k) const { return mask_measures[escape_region_mask(k)]; }
  /// sum_{k=1..8} P(T_k), summed in region order.
  double sum_escape_regions() const;
};

MeasureEstimate transition_measure(const HvModel& model, const Distribution& dist, const AngleQuadruple& q,
                                   TransitionSetId which, const Scheme& scheme);

/// (P(+,-), P(-,+)) for the set `which`.
PartitionMeasure partition_measures(const HvModel& model, const Distribution& dist, const AngleQuadruple& q,
                                    TransitionSetId which, const Scheme& scheme);

/// Single classification sweep that fills every field of the report.
TransitionReport full_report(const HvModel& model, const Distribution& dist, const AngleQuadruple& q,
                             const Scheme& scheme);

/// 256-bucket outcome histogram alone (what full_report sweeps over).
SweepResult sweep_outcomes(const HvModel& model, const Distribution& dist, const AngleQuadruple& q,
                           const Scheme& scheme);

/// Checks the report identities (partition additivity, parity, sign
/// cross-check); throws InvariantViolation on failure.
void verify_report(const TransitionReport& report);

}  // namespace hvlab
