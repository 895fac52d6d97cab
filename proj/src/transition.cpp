#include "hvlab/transition.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "hvlab/kernels.hpp"

namespace hvlab {

namespace {

// Set indices in the order the escape regions are listed.
constexpr std::array<int, 4> kRegionOrder = {index_of(TransitionSetId::b_at_b),
                                             index_of(TransitionSetId::a_at_a_prime),
                                             index_of(TransitionSetId::b_at_b_prime),
                                             index_of(TransitionSetId::a_at_a)};

constexpr std::uint8_t bit(int set_index) { return static_cast<std::uint8_t>(1u << set_index); }

constexpr double kIdentityTolerance = 1e-12;

}  // namespace

const char* set_name(TransitionSetId id) {
  switch (id) {
    case TransitionSetId::b_at_b: return "T^{a<->a'}_b";
    case TransitionSetId::b_at_b_prime: return "T^{a<->a'}_b'";
    case TransitionSetId::a_at_a: return "T^a_{b<->b'}";
    case TransitionSetId::a_at_a_prime: return "T^a'_{b<->b'}";
  }
  return "?";
}

std::uint8_t ContextOutcomes::code() const {
  std::uint8_t c = 0;
  for (int i = 0; i < kContexts; ++i) {
    if (alice[i] == Outcome::plus) c |= static_cast<std::uint8_t>(1u << (2 * i));
    if (bob[i] == Outcome::plus) c |= static_cast<std::uint8_t>(1u << (2 * i + 1));
  }
  return c;
}

ContextOutcomes ContextOutcomes::from_code(std::uint8_t code) {
  ContextOutcomes o;
  for (int i = 0; i < kContexts; ++i) {
    o.alice[i] = outcome_if((code >> (2 * i)) & 1u);
    o.bob[i] = outcome_if((code >> (2 * i + 1)) & 1u);
  }
  return o;
}

ContextOutcomes evaluate_contexts(const HvModel& model, const AngleQuadruple& q, const LambdaPoint& p) {
  if (p.dimension() != model.space().dimension()) {
    throw std::invalid_argument("lambda dimension does not match the model");
  }
  ContextOutcomes o;
  for (int i = 0; i < kContexts; ++i) {
    const ContextSettings s = context_settings(q, i);
    o.alice[i] = model.outcome_a(s.alice, s.bob, p);
    o.bob[i] = model.outcome_b(s.alice, s.bob, p);
  }
  return o;
}

std::pair<Outcome, Outcome> set_outcome_pair(const ContextOutcomes& o, TransitionSetId id) {
  switch (id) {
    case TransitionSetId::b_at_b: return {o.bob[0], o.bob[1]};
    case TransitionSetId::b_at_b_prime: return {o.bob[3], o.bob[2]};
    case TransitionSetId::a_at_a: return {o.alice[0], o.alice[3]};
    case TransitionSetId::a_at_a_prime: return {o.alice[1], o.alice[2]};
  }
  throw std::invalid_argument("unknown transition set");
}

int MembershipVector::count() const {
  int n = 0;
  for (bool b : in_set) n += b ? 1 : 0;
  return n;
}

std::uint8_t MembershipVector::mask() const {
  std::uint8_t m = 0;
  for (int i = 0; i < 4; ++i) {
    if (in_set[i]) m |= bit(i);
  }
  return m;
}

Outcome MembershipVector::sign_product() const {
  Outcome s = Outcome::plus;
  for (Outcome o : sign_pattern) s = s * o;
  return s;
}

MembershipVector memberships_of(const ContextOutcomes& o) {
  MembershipVector m;
  for (TransitionSetId id : kTransitionSets) {
    const auto [first, second] = set_outcome_pair(o, id);
    m.in_set[index_of(id)] = first != second;
  }
  for (int i = 0; i < kContexts; ++i) m.sign_pattern[i] = o.product(i);
  return m;
}

MembershipVector classify_lambda(const HvModel& model, const AngleQuadruple& q, const LambdaPoint& p) {
  return memberships_of(evaluate_contexts(model, q, p));
}

std::uint8_t escape_region_mask(int k) {
  if (k >= 1 && k <= 4) return static_cast<std::uint8_t>(0xF & ~bit(kRegionOrder[k - 1]));
  if (k >= 5 && k <= 8) return bit(kRegionOrder[8 - k]);
  throw std::out_of_range("escape region index must be in [1, 8]");
}

int escape_region_of(std::uint8_t mask) {
  for (int k = 1; k <= 8; ++k) {
    if (escape_region_mask(k) == mask) return k;
  }
  return 0;
}

std::uint8_t pair_region_mask(int k) {
  int n = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (++n == k) return static_cast<std::uint8_t>(bit(kRegionOrder[i]) | bit(kRegionOrder[j]));
    }
  }
  throw std::out_of_range("pair region index must be in [1, 6]");
}

std::string region_label(std::uint8_t mask) {
  if (mask == 0) return "O";
  if (mask == 0xF) return "F";
  if (const int k = escape_region_of(mask); k != 0) return fmt::format("T{}", k);
  for (int k = 1; k <= 6; ++k) {
    if (pair_region_mask(k) == mask) return fmt::format("E{}", k);
  }
  throw std::out_of_range("membership mask must be in [0, 16)");
}

double TransitionReport::sum_escape_regions() const {
  double s = 0.0;
  for (int k = 1; k <= 8; ++k) s += escape_region(k).value;
  return s;
}

MeasureEstimate transition_measure(const HvModel& model, const Distribution& dist, const AngleQuadruple& q,
                                   TransitionSetId which, const Scheme& scheme) {
  require_same_space(model, dist);
  const Wing wing = responding_wing(which);
  // settings of the two contexts the set compares
  Angle a1 = q.a, a2 = q.a_prime, b1 = q.b, b2 = q.b;
  switch (which) {
    case TransitionSetId::b_at_b: break;
    case TransitionSetId::b_at_b_prime:
      b1 = b2 = q.b_prime;
      break;
    case TransitionSetId::a_at_a:
      a2 = q.a;
      b2 = q.b_prime;
      break;
    case TransitionSetId::a_at_a_prime:
      a1 = a2 = q.a_prime;
      b2 = q.b_prime;
      break;
  }
  return estimate_measure(
      dist,
      [&](const LambdaPoint& p) {
        return wing == Wing::bob ? model.outcome_b(a1, b1, p) != model.outcome_b(a2, b2, p)
                                 : model.outcome_a(a1, b1, p) != model.outcome_a(a2, b2, p);
      },
      scheme);
}

PartitionMeasure partition_measures(const HvModel& model, const Distribution& dist, const AngleQuadruple& q,
                                    TransitionSetId which, const Scheme& scheme) {
  require_same_space(model, dist);
  // bucket = 2 * [first = +1] + [second = +1]; (+,-) is 2, (-,+) is 1
  const SweepResult r = sweep(dist, scheme, 4, [&](const LambdaPoint& p) -> std::size_t {
    const auto [first, second] = set_outcome_pair(evaluate_contexts(model, q, p), which);
    return 2u * (first == Outcome::plus) + (second == Outcome::plus);
  });
  return {r.measure([](std::size_t b) { return b == 2; }), r.measure([](std::size_t b) { return b == 1; })};
}

SweepResult sweep_outcomes(const HvModel& model, const Distribution& dist, const AngleQuadruple& q,
                           const Scheme& scheme) {
  require_same_space(model, dist);
  return sweep(dist, scheme, 256,
               [&](const LambdaPoint& p) -> std::size_t { return evaluate_contexts(model, q, p).code(); });
}

TransitionReport full_report(const HvModel& model, const Distribution& dist, const AngleQuadruple& q,
                             const Scheme& scheme) {
  TransitionReport rep;
  rep.quadruple = q;
  rep.scheme = scheme;
  rep.model_name = model.name();
  rep.distribution_label = dist.label();
  rep.outcomes = sweep_outcomes(model, dist, q, scheme);

  std::array<MembershipVector, 256> by_code;
  for (std::size_t c = 0; c < 256; ++c) by_code[c] = memberships_of(ContextOutcomes::from_code(static_cast<std::uint8_t>(c)));

  const SweepResult& s = rep.outcomes;
  for (TransitionSetId id : kTransitionSets) {
    const int i = index_of(id);
    rep.set_measures[i] = s.measure([&](std::size_t c) { return by_code[c].in_set[i]; });
    rep.partitions[i].plus_minus = s.measure([&](std::size_t c) {
      const auto [first, second] = set_outcome_pair(ContextOutcomes::from_code(static_cast<std::uint8_t>(c)), id);
      return first == Outcome::plus && second == Outcome::minus;
    });
    rep.partitions[i].minus_plus = s.measure([&](std::size_t c) {
      const auto [first, second] = set_outcome_pair(ContextOutcomes::from_code(static_cast<std::uint8_t>(c)), id);
      return first == Outcome::minus && second == Outcome::plus;
    });
  }
  for (int m = 0; m < kMasks; ++m) {
    rep.mask_measures[m] = s.measure([&](std::size_t c) { return by_code[c].mask() == m; });
  }
  rep.sigma_minus = s.measure([&](std::size_t c) { return by_code[c].count() % 2 == 1; });
  rep.sigma_minus_by_sign = s.measure([&](std::size_t c) { return by_code[c].sign_product() == Outcome::minus; });
  return rep;
}

void verify_report(const TransitionReport& r) {
  auto check = [](bool ok, const std::string& what) {
    if (!ok) throw InvariantViolation(what);
  };
  for (TransitionSetId id : kTransitionSets) {
    const int i = index_of(id);
    const double sum = r.partitions[i].plus_minus.value + r.partitions[i].minus_plus.value;
    check(std::abs(sum - r.set_measures[i].value) <= kIdentityTolerance,
          fmt::format("partition additivity failed for {}", set_name(id)));
  }
  check(std::abs(r.sum_escape_regions() - r.sigma_minus.value) <= kIdentityTolerance,
        "sum of escape regions differs from P(sigma_-)");
  check(std::abs(r.sigma_minus.value - r.sigma_minus_by_sign.value) <= kIdentityTolerance,
        "odd-membership measure differs from negative-sign measure");
}

}  // namespace hvlab
