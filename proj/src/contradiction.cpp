#include "hvlab/inequalities.hpp"

#include <stdexcept>

#include <fmt/format.h>

namespace hvlab {

namespace {

char sign_char(Outcome o) { return o == Outcome::plus ? '+' : '-'; }

std::string outcome_text(Wing w, int context, Outcome o) {
  return fmt::format("{}({})={:+d}", wing_name(w), context_name(context), value(o));
}

struct ChainLink {
  DeductionStep::Kind kind;
  int source_context;  // product steps: context of S_i
  TransitionSetId set;
  Wing wing;  // wing of inferred outcome
  int context;  // context of inferred outcome
};

// Alternates product-sign steps and transition-set steps around the four
// contexts, returning to A(a,b).
constexpr std::array<ChainLink, kFinalDeductionStep> kChain = {{
    {DeductionStep::Kind::product_sign, 0, TransitionSetId::b_at_b, Wing::bob, 0},
    {DeductionStep::Kind::transition_set, 0, TransitionSetId::b_at_b, Wing::bob, 1},
    {DeductionStep::Kind::product_sign, 1, TransitionSetId::b_at_b, Wing::alice, 1},
    {DeductionStep::Kind::transition_set, 0, TransitionSetId::a_at_a_prime, Wing::alice, 2},
    {DeductionStep::Kind::product_sign, 2, TransitionSetId::b_at_b, Wing::bob, 2},
    {DeductionStep::Kind::transition_set, 0, TransitionSetId::b_at_b_prime, Wing::bob, 3},
    {DeductionStep::Kind::product_sign, 3, TransitionSetId::b_at_b, Wing::alice, 3},
    {DeductionStep::Kind::transition_set, 0, TransitionSetId::a_at_a, Wing::alice, 0},
}};

}  // namespace

ContradictionTrace contradiction_trace(const ContextOutcomes& assignment, const MembershipVector& memberships,
                                       Hypothesis hypothesis) {
  if (!(memberships_of(assignment) == memberships)) {
    throw std::invalid_argument("memberships do not match the outcome assignment");
  }
  ContradictionTrace trace;
  trace.hypothesis = hypothesis;
  trace.premise = assignment.alice[0];
  for (TransitionSetId id : kTransitionSets) {
    if (memberships.in_set[index_of(id)]) trace.escape_sets.push_back(id);
  }

  Outcome current = trace.premise;
  for (int n = 0; n < kFinalDeductionStep; ++n) {
    const ChainLink& link = kChain[n];
    DeductionStep step;
    step.number = n + 1;
    step.kind = link.kind;
    step.wing = link.wing;
    step.context = link.context;
    if (link.kind == DeductionStep::Kind::product_sign) {
      step.sign = memberships.sign_pattern[link.source_context];
      current = step.sign * current;
    } else {
      step.set = link.set;
      step.crossed = hypothesis == Hypothesis::actual_memberships && memberships.in_set[index_of(link.set)];
      if (step.crossed) current = -current;
    }
    step.inferred = current;
    trace.steps.push_back(step);
  }
  if (current != trace.premise) {
    trace.consistent = false;
    trace.failing_step = kFinalDeductionStep;
  }
  return trace;
}

std::string ContradictionTrace::to_string() const {
  std::string out = fmt::format("premise {}\n", outcome_text(Wing::alice, 0, premise));
  for (const DeductionStep& s : steps) {
    std::string because;
    if (s.kind == DeductionStep::Kind::product_sign) {
      because = fmt::format("lambda in S{}{}", s.context + 1, sign_char(s.sign));
    } else if (hypothesis == Hypothesis::all_sets_empty) {
      because = fmt::format("{} empty", set_name(s.set));
    } else {
      because = fmt::format("lambda {} {}", s.crossed ? "in" : "not in", set_name(s.set));
    }
    out += fmt::format("{}. [{}] => {}\n", s.number, because, outcome_text(s.wing, s.context, s.inferred));
  }
  if (consistent) {
    out += "consistent\n";
  } else {
    out += fmt::format("step {}: {} contradicts the premise (bottom)\n", failing_step,
                       outcome_text(Wing::alice, 0, steps.back().inferred));
  }
  if (!escape_sets.empty()) {
    out += "lambda lies in:";
    for (TransitionSetId id : escape_sets) out += fmt::format(" {}", set_name(id));
    out += '\n';
  }
  return out;
}

}  // namespace hvlab
