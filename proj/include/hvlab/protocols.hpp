#pragma once

#include <array>
#include <cstdint>
#include <functional>

#include "hvlab/core.hpp"
#include "hvlab/inequalities.hpp"
#include "hvlab/measure.hpp"
#include "hvlab/transition.hpp"

namespace hvlab {

/// Bits sent in one run of the game under the one-shot convention: Alice
/// sends her setting iff lambda lies in a B-side set (Bob might need it),
/// Bob sends his iff lambda lies in an A-side set.
int bits_required(const MembershipVector& memberships);
int bits_required(std::uint8_t membership_mask);

struct CommRunLog {
  std::int64_t run = 0;
  LambdaPoint lambda;
  bool alice_primed = false;  ///< Alice got a' (else a)
  bool bob_primed = false;  ///< Bob got b' (else b)
  std::uint8_t membership_mask = 0;
  int bits = 0;
  Outcome alice = Outcome::plus;
  Outcome bob = Outcome::plus;

  /// Context index of the realised settings.
  int context() const;
};

struct CommSummary {
  std::int64_t n_runs = 0;
  std::uint64_t seed = 0;
  Estimate average_bits;
  /// Empirical P(sigma_-) over the sampled lambdas.
  Estimate sigma_minus_bound;
  /// Product statistics conditioned on the realised settings.
  JointStats stats;
  std::array<std::int64_t, kContexts> context_runs{};
};

using RunLogSink = std::function<void(const CommRunLog&)>;

/// Plays n_runs rounds: lambda drawn from dist (rejection sampling against
/// its density bound), fair-coin settings on both wings, outcomes from the
/// model. Every draw comes from a per-run substream of `seed`, so the
/// result is independent of the worker count. The sink, when given, sees
/// the runs in index order. Throws std::invalid_argument for n_runs < 1.
CommSummary simulate_game(const HvModel& model, const Distribution& dist, const AngleQuadruple& q,
                          std::int64_t n_runs, std::uint64_t seed, const RunLogSink& sink = {});

/// Region-integral average cost sum_mask bits(mask) * P(mask) next to its
/// lower bound P(sigma_-).
struct BitsIdentity {
  Estimate average_bits;
  Estimate lower_bound;
};

/// Throws InvariantViolation if the average falls below P(sigma_-).
BitsIdentity average_bits_identity(const TransitionReport& report);

/// |P(B=+1 | a1, b) - P(B=+1 | a2, b)| under dist.
double marginal_shift(const HvModel& model, const Distribution& dist, Angle b_setting, Angle a1, Angle a2,
                      const Scheme& scheme);

/// |P(+,-) - P(-,+)| for the transition set `which`.
double detailed_balance(const HvModel& model, const Distribution& dist, const AngleQuadruple& q,
                        TransitionSetId which, const Scheme& scheme);

}  // namespace hvlab
