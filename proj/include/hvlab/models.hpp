#pragma once

#include <functional>
#include <string>

#include "hvlab/core.hpp"

namespace hvlab {

/// Two independent fair coins on (u, v): A = +1 iff u < 1/2, B = +1 iff
/// v < 1/2. Neither outcome reads any setting.
HvModel local_coin_model();

/// Nonlocal witness reproducing singlet statistics on uniform (u, v):
///   A = +1 iff u < 1/2
///   B = -A if v < (1 + cos(a - b)) / 2, else +A
/// All nonlocality sits on the B side.
HvModel singlet_model();

/// Reweights coords[0] so that P(u < 1/2) = q; other axes stay uniform.
/// Density is 2q on u < 1/2 and 2(1-q) elsewhere. Throws
/// std::invalid_argument for q outside [0, 1].
Distribution biased_distribution(const HvModel& model, double q);
Distribution biased_distribution(const LambdaSpace& space, double q);

/// Outcome of the wing measured first: depends on its own setting only.
using FirstOutcomeFn = std::function<Outcome(Wing, Angle own, const LambdaPoint&)>;
/// Outcome of the wing measured second, given the first wing's outcome.
using SecondOutcomeFn = std::function<Outcome(Wing, Angle own, Angle other, Outcome first, const LambdaPoint&)>;

/// Time-ordered model for two commuting observables (one per wing). The
/// first-measured wing cannot see the other setting; that is enforced by
/// the signature of FirstOutcomeFn.
class SequentialModel {
 public:
  SequentialModel(std::string name, LambdaSpace space, FirstOutcomeFn first, SecondOutcomeFn second,
                  Distribution equilibrium);

  const std::string& name() const { return name_; }
  const LambdaSpace& space() const { return space_; }
  const Distribution& equilibrium() const { return equilibrium_; }

  Outcome first_outcome(Wing wing, Angle own, const LambdaPoint& p) const { return first_(wing, own, p); }
  Outcome second_outcome(Wing wing, Angle own, Angle other, Outcome first, const LambdaPoint& p) const {
    return second_(wing, own, other, first, p);
  }

 private:
  std::string name_;
  LambdaSpace space_;
  FirstOutcomeFn first_;
  SecondOutcomeFn second_;
  Distribution equilibrium_;
};

/// Whichever wing goes first flips the shared coin (+1 iff u < 1/2); the
/// second wing anticorrelates with it iff v < (1 + cos theta) / 2.
SequentialModel sequential_singlet_model();

/// Toy model whose second-measured outcome ignores order: each wing keeps
/// its own coin (A on u, B on v).
SequentialModel sequential_local_model();

/// Flattens a fixed measurement order into an ordinary HvModel.
HvModel ordered_view(const SequentialModel& model, Wing first);

/// Parses the CLI model names: "local-coin", "singlet",
/// "singlet+bias:q=<real>", "sequential-singlet" (A measured first).
/// The returned distribution is the one the name implies. Throws
/// std::invalid_argument for an unknown name.
struct NamedModel {
  HvModel model;
  Distribution distribution;
};
NamedModel model_by_name(const std::string& name);

}  // namespace hvlab
