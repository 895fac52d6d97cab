#pragma once

#include <array>
#include <string>
#include <vector>

#include "hvlab/core.hpp"
#include "hvlab/measure.hpp"
#include "hvlab/transition.hpp"

namespace hvlab {

/// p_plus[i] = P(A*B = +1) in context i, p_minus the complement.
/// std_error is zero for analytic and grid statistics.
struct JointStats {
  std::array<double, kContexts> p_plus{};
  std::array<double, kContexts> p_minus{};
  std::array<double, kContexts> std_error{};

  /// Builds stats with p_minus = 1 - p_plus.
  static JointStats from_p_plus(const std::array<double, kContexts>& p_plus);

  /// Throws std::invalid_argument if an entry leaves [0,1] or a pair does
  /// not sum to 1 within 1e-12.
  void validate() const;

  double p(int context, Outcome sign) const { return sign == Outcome::plus ? p_plus[context] : p_minus[context]; }
};

JointStats stats_from_model(const HvModel& model, const Distribution& dist, const AngleQuadruple& q,
                            const Scheme& scheme);

/// Context statistics read off a 256-bucket outcome sweep.
JointStats stats_from_outcomes(const SweepResult& outcomes);

/// Singlet statistics P(product = +-1) = (1 -+ cos theta) / 2.
JointStats quantum_stats(const AngleQuadruple& q);

/// The eight linear Hardy lower bounds, their unified non-negative bound
/// and the left side of the unified Bell inequality (violated when > 2).
struct HardyBounds {
  std::array<double, 4> alpha{};
  std::array<double, 4> beta{};
  double unified = 0.0;
  double bell_lhs = 0.0;

  bool violated() const { return bell_lhs > 2.0; }
  double max_bound() const;
};

/// Throws std::invalid_argument for stats that fail validate().
HardyBounds hardy_bounds(const JointStats& stats);

/// Product-sign pattern whose intersection set the bound refers to, e.g.
/// beta[0] <-> (-,-,-,+). `beta` selects the family, i in [0,4).
std::array<Outcome, kContexts> bound_sign_pattern(bool beta, int i);

/// sum_i P(S_i^{sign_i}) - 3, the Hardy bound for an arbitrary pattern.
double hardy_bound_for_pattern(const JointStats& stats, const std::array<Outcome, kContexts>& signs);

/// The chain bound max(0, P(S1-) + P(S2-) + P(S3-) + P(S4+) - 3).
double chain_hardy_bound(const JointStats& stats);

/// Unified bound in the nested absolute-value form
/// (|x-1| + |y-1| + x + y) / 2 - 1; equal to HardyBounds::unified.
double unified_bound_absolute_form(const JointStats& stats);

/// c_i = p_plus - p_minus, and the two CHSH sides
/// |c(a,b) + c(a,b')| + |c(a',b) - c(a',b')| and
/// |c(a,b) - c(a,b')| + |c(a',b) + c(a',b')|.
struct ChshValues {
  std::array<double, kContexts> correlation{};
  double lhs_plus = 0.0;
  double lhs_minus = 0.0;
};

ChshValues chsh_correlations(const JointStats& stats);

/// Number of strictly positive Hardy bounds; never more than one.
int lemma_check(const JointStats& stats);

// Replays the chain of deductions that turns an empty-transition-set
// hypothesis into a contradiction for a negative sign product.

enum class Hypothesis : std::uint8_t { all_sets_empty, actual_memberships };

struct DeductionStep {
  enum class Kind : std::uint8_t { product_sign, transition_set };

  int number = 0;  ///< 1..8 in chain order
  Kind kind = Kind::product_sign;
  int context = 0;  ///< context whose outcome is inferred
  Outcome sign = Outcome::plus;  ///< product sign of S_context (product steps)
  TransitionSetId set = TransitionSetId::b_at_b;  ///< transition steps
  bool crossed = false;  ///< lambda taken to lie in `set`
  Wing wing = Wing::alice;  ///< wing of the inferred outcome
  Outcome inferred = Outcome::plus;
};

struct ContradictionTrace {
  Hypothesis hypothesis = Hypothesis::all_sets_empty;
  Outcome premise = Outcome::plus;  ///< A(a,b) the chain starts from
  std::vector<DeductionStep> steps;
  bool consistent = true;
  int failing_step = 0;  ///< 0 when consistent
  /// Sets lambda actually lies in; for a contradiction these are the
  /// escape the model has to use.
  std::vector<TransitionSetId> escape_sets;

  std::string to_string() const;
};

/// Number of the step at which the all-empty chain closes on A(a,b).
inline constexpr int kFinalDeductionStep = 8;

/// Throws std::invalid_argument if `memberships` is not the classification
/// of `assignment`.
ContradictionTrace contradiction_trace(const ContextOutcomes& assignment, const MembershipVector& memberships,
                                       Hypothesis hypothesis = Hypothesis::all_sets_empty);

}  // namespace hvlab
