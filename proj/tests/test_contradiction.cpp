#include <doctest.h>

#include "hvlab/inequalities.hpp"
#include "hvlab/models.hpp"

using namespace hvlab;

namespace {

Outcome actual(const ContextOutcomes& o, const DeductionStep& s) {
  return s.wing == Wing::alice ? o.alice[s.context] : o.bob[s.context];
}

}  // namespace

TEST_SUITE("contradiction") {
  TEST_CASE("all-empty hypothesis fails exactly on negative sign products") {
    for (int c = 0; c < 256; ++c) {
      const ContextOutcomes o = ContextOutcomes::from_code(static_cast<std::uint8_t>(c));
      const MembershipVector mv = memberships_of(o);
      const ContradictionTrace t = contradiction_trace(o, mv);
      REQUIRE(t.steps.size() == kFinalDeductionStep);
      CHECK(t.premise == o.alice[0]);
      if (mv.sign_product() == Outcome::minus) {
        CHECK_FALSE(t.consistent);
        CHECK(t.failing_step == kFinalDeductionStep);
        CHECK(t.steps.back().inferred == -o.alice[0]);
        CHECK(t.escape_sets.size() % 2 == 1);
      } else {
        CHECK(t.consistent);
        CHECK(t.failing_step == 0);
      }
    }
  }

  TEST_CASE("actual memberships reproduce every outcome") {
    for (int c = 0; c < 256; ++c) {
      const ContextOutcomes o = ContextOutcomes::from_code(static_cast<std::uint8_t>(c));
      const ContradictionTrace t = contradiction_trace(o, memberships_of(o), Hypothesis::actual_memberships);
      CHECK(t.consistent);
      for (const DeductionStep& s : t.steps) CHECK(s.inferred == actual(o, s));
    }
  }

  TEST_CASE("chain alternates product and transition steps") {
    const ContextOutcomes o = ContextOutcomes::from_code(0);
    const ContradictionTrace t = contradiction_trace(o, memberships_of(o));
    for (const DeductionStep& s : t.steps) {
      CHECK(s.kind == (s.number % 2 == 1 ? DeductionStep::Kind::product_sign : DeductionStep::Kind::transition_set));
    }
    CHECK(t.steps[1].set == TransitionSetId::b_at_b);
    CHECK(t.steps[3].set == TransitionSetId::a_at_a_prime);
    CHECK(t.steps[5].set == TransitionSetId::b_at_b_prime);
    CHECK(t.steps[7].set == TransitionSetId::a_at_a);
    CHECK(t.steps[7].wing == Wing::alice);
    CHECK(t.steps[7].context == 0);
  }

  TEST_CASE("mismatched memberships are rejected") {
    const ContextOutcomes o = ContextOutcomes::from_code(0x5A);
    MembershipVector mv = memberships_of(o);
    mv.in_set[0] = !mv.in_set[0];
    CHECK_THROWS_AS(contradiction_trace(o, mv), std::invalid_argument);
  }

  TEST_CASE("trace text") {
    const HvModel m = singlet_model();
    const AngleQuadruple q = chain_quadruple(0.785398163397448);
    // u < 1/2 and v between the two thresholds: lambda in T^{a<->a'}_b' only
    const LambdaPoint p{0.25, 0.5};
    const ContextOutcomes o = evaluate_contexts(m, q, p);
    const ContradictionTrace t = contradiction_trace(o, memberships_of(o));
    CHECK_FALSE(t.consistent);
    const std::string text = t.to_string();
    CHECK(text.find("step 8") != std::string::npos);
    CHECK(text.find("T^{a<->a'}_b'") != std::string::npos);
    CHECK(contradiction_trace(o, memberships_of(o), Hypothesis::actual_memberships).to_string().find("consistent") !=
          std::string::npos);
  }
}

TEST_SUITE("contradiction") {
  TEST_CASE("a single A-side escape resolves the chain") {
    // products (-,-,-,+) realised with lambda only in T^a_{b<->b'}
    ContextOutcomes o;
    o.alice = {Outcome::plus, Outcome::plus, Outcome::plus, Outcome::minus};
    o.bob = {Outcome::minus, Outcome::minus, Outcome::minus, Outcome::minus};
    const MembershipVector mv = memberships_of(o);
    REQUIRE(mv.sign_pattern == std::array{Outcome::minus, Outcome::minus, Outcome::minus, Outcome::plus});
    REQUIRE(mv.mask() == 0b0100);
    CHECK_FALSE(contradiction_trace(o, mv).consistent);
    const ContradictionTrace escape = contradiction_trace(o, mv, Hypothesis::actual_memberships);
    CHECK(escape.consistent);
    CHECK(escape.escape_sets == std::vector{TransitionSetId::a_at_a});
    CHECK(escape.steps[7].crossed);
  }

  TEST_CASE("all-negative products need no escape") {
    ContextOutcomes o;
    o.alice = {Outcome::plus, Outcome::plus, Outcome::plus, Outcome::plus};
    o.bob = {Outcome::minus, Outcome::minus, Outcome::minus, Outcome::minus};
    const ContradictionTrace t = contradiction_trace(o, memberships_of(o));
    CHECK(t.consistent);
    CHECK(t.escape_sets.empty());
  }
}
