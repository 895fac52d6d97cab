#include <doctest.h>

#include <bit>
#include <cmath>
#include <random>

#include <omp.h>

#include "hvlab/models.hpp"
#include "hvlab/protocols.hpp"
#include "oracles.hpp"

using namespace hvlab;

TEST_SUITE("protocols") {
  TEST_CASE("bits per membership mask") {
    CHECK(bits_required(std::uint8_t{0}) == 0);
    CHECK(bits_required(std::uint8_t{0b0001}) == 1);
    CHECK(bits_required(std::uint8_t{0b0011}) == 1);
    CHECK(bits_required(std::uint8_t{0b0100}) == 1);
    CHECK(bits_required(std::uint8_t{0b1100}) == 1);
    CHECK(bits_required(std::uint8_t{0b0101}) == 2);
    CHECK(bits_required(std::uint8_t{0b1111}) == 2);
    // at least one bit whenever lambda is in sigma_-
    for (int m = 0; m < 16; ++m) {
      if (std::popcount(static_cast<unsigned>(m)) % 2 == 1) CHECK(bits_required(static_cast<std::uint8_t>(m)) >= 1);
    }
  }

  TEST_CASE("local coin game is free") {
    const HvModel m = local_coin_model();
    const CommSummary s = simulate_game(m, m.equilibrium(), chain_quadruple(0.6), 50000, 3);
    CHECK(s.average_bits.value == 0.0);
    CHECK(s.sigma_minus_bound.value == 0.0);
    for (int c = 0; c < kContexts; ++c) CHECK(std::abs(s.stats.p_plus[c] - 0.5) < 4.0 * s.stats.std_error[c]);
  }

  TEST_CASE("singlet game at pi/4 pays at least P(sigma_-)") {
    const HvModel m = singlet_model();
    const CommSummary s = simulate_game(m, m.equilibrium(), chain_quadruple(oracle::kPi / 4), 200000, 17);
    CHECK(s.average_bits.value >= oracle::kSqrt2 - 1 - 4.0 * s.average_bits.std_error);
    CHECK(std::abs(s.average_bits.value - oracle::kSqrt2 / 2) < 4.0 * s.average_bits.std_error);
    CHECK(s.average_bits.value >= s.sigma_minus_bound.value);
    const AngleQuadruple q = chain_quadruple(oracle::kPi / 4);
    for (int c = 0; c < kContexts; ++c) {
      const ContextSettings cs = context_settings(q, c);
      const double t = theta_between(cs.alice, cs.bob);
      CHECK(std::abs(s.stats.p_minus[c] - oracle::singlet_p_minus(t)) < 4.0 * s.stats.std_error[c]);
    }
    std::int64_t total = 0;
    for (std::int64_t r : s.context_runs) total += r;
    CHECK(total == 200000);
  }

  TEST_CASE("game draws follow the biased density") {
    const HvModel m = singlet_model();
    std::int64_t low = 0;
    std::int64_t n = 0;
    simulate_game(m, biased_distribution(m, 0.8), chain_quadruple(0.5), 40000, 5, [&](const CommRunLog& r) {
      ++n;
      low += r.lambda[0] < 0.5;
    });
    const double p = static_cast<double>(low) / static_cast<double>(n);
    CHECK(std::abs(p - 0.8) < 4.0 * std::sqrt(0.8 * 0.2 / static_cast<double>(n)));
  }

  TEST_CASE("game is reproducible and independent of the thread count") {
    const HvModel m = singlet_model();
    const AngleQuadruple q = chain_quadruple(1.0);
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const CommSummary one = simulate_game(m, m.equilibrium(), q, 70000, 9);
    omp_set_num_threads(4);
    const CommSummary four = simulate_game(m, m.equilibrium(), q, 70000, 9);
    omp_set_num_threads(saved);
    CHECK(one.average_bits.value == four.average_bits.value);
    CHECK(one.average_bits.std_error == four.average_bits.std_error);
    CHECK(one.context_runs == four.context_runs);
    CHECK(one.stats.p_plus == four.stats.p_plus);
    const CommSummary other = simulate_game(m, m.equilibrium(), q, 70000, 10);
    CHECK(other.stats.p_plus != one.stats.p_plus);
  }

  TEST_CASE("run log arrives in order and is self-consistent") {
    const HvModel m = singlet_model();
    const AngleQuadruple q = chain_quadruple(0.7);
    std::int64_t expected = 0;
    bool ordered = true;
    bool consistent = true;
    simulate_game(m, m.equilibrium(), q, 40000, 2, [&](const CommRunLog& r) {
      ordered = ordered && r.run == expected++;
      const ContextOutcomes o = evaluate_contexts(m, q, r.lambda);
      consistent = consistent && r.membership_mask == memberships_of(o).mask() &&
                   r.bits == bits_required(r.membership_mask) && r.alice == o.alice[r.context()] &&
                   r.bob == o.bob[r.context()];
    });
    CHECK(expected == 40000);
    CHECK(ordered);
    CHECK(consistent);
  }

  TEST_CASE("game argument checks") {
    const HvModel m = singlet_model();
    CHECK_THROWS_AS(simulate_game(m, m.equilibrium(), chain_quadruple(0.1), 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(simulate_game(m, Distribution::uniform(LambdaSpace(3)), chain_quadruple(0.1), 10, 1),
                    std::invalid_argument);
  }

  TEST_CASE("region-integral bits") {
    const HvModel m = singlet_model();
    const TransitionReport r = full_report(m, m.equilibrium(), chain_quadruple(oracle::kPi / 4), Scheme::grid(512));
    const BitsIdentity id = average_bits_identity(r);
    CHECK(id.average_bits.value == doctest::Approx(oracle::singlet_grid_t_b_prime(oracle::kPi / 4, 512)));
    CHECK(id.lower_bound.value == doctest::Approx(r.sigma_minus.value).epsilon(1e-13));
  }

  TEST_CASE("no signalling at equilibrium") {
    const HvModel m = singlet_model();
    std::mt19937_64 rng(4);
    for (int i = 0; i < 8; ++i) {
      const Angle b = make_angle(oracle::random_angle(rng));
      const Angle a1 = make_angle(oracle::random_angle(rng));
      const Angle a2 = make_angle(oracle::random_angle(rng));
      CHECK(marginal_shift(m, m.equilibrium(), b, a1, a2, Scheme::grid(256)) < 1e-12);
      const AngleQuadruple q{a1, a2, b, b};
      CHECK(detailed_balance(m, m.equilibrium(), q, TransitionSetId::b_at_b, Scheme::grid(256)) < 1e-12);
    }
  }

  TEST_CASE("biased density signals") {
    const HvModel m = singlet_model();
    const Angle zero = make_angle(0.0);
    const Angle right = make_angle(oracle::kPi / 2);
    for (double q : {0.0, 0.25, 0.5, 0.9, 1.0}) {
      const double shift = marginal_shift(m, biased_distribution(m, q), zero, zero, right, Scheme::grid(512));
      // P(B=+) = q (1 - c) + (1 - q) c with c the flip probability
      const double c1 = oracle::singlet_grid_p_minus(0.0, 512);
      const double c2 = oracle::singlet_grid_p_minus(oracle::kPi / 2, 512);
      CHECK(shift == doctest::Approx(std::abs((1 - 2 * q) * (c1 - c2))).epsilon(1e-12));
    }
    CHECK(marginal_shift(local_coin_model(), biased_distribution(local_coin_model(), 1.0), zero, zero, right,
                         Scheme::grid(128)) == 0.0);
  }
}

TEST_SUITE("protocols") {
  TEST_CASE("bits by region family") {
    for (int k = 1; k <= 4; ++k) CHECK(bits_required(escape_region_mask(k)) == 2);
    for (int k = 5; k <= 8; ++k) CHECK(bits_required(escape_region_mask(k)) == 1);
    MembershipVector mv;
    CHECK(bits_required(mv) == 0);
    mv.in_set = {true, false, true, false};
    CHECK(bits_required(mv) == 2);
  }

  TEST_CASE("exactly-one regions make the bound tight") {
    const HvModel m = singlet_model();
    const TransitionReport r = full_report(m, m.equilibrium(), chain_quadruple(0.9), Scheme::grid(256));
    for (int k = 1; k <= 4; ++k) REQUIRE(r.escape_region(k).value == 0.0);
    const BitsIdentity id = average_bits_identity(r);
    CHECK(id.average_bits.value == doctest::Approx(id.lower_bound.value).epsilon(1e-14));
    const HvModel local = local_coin_model();
    const BitsIdentity zero = average_bits_identity(full_report(local, local.equilibrium(), chain_quadruple(0.9),
                                                                Scheme::grid(64)));
    CHECK(zero.average_bits.value == 0.0);
    CHECK(zero.lower_bound.value == 0.0);
  }

  TEST_CASE("biased detailed-balance gap equals the whole set") {
    const HvModel m = singlet_model();
    const Distribution d = biased_distribution(m, 1.0);
    const AngleQuadruple q = make_quadruple(0.3, 1.9, 0.0, 0.0);
    const Scheme g = Scheme::grid(512);
    CHECK(detailed_balance(m, d, q, TransitionSetId::b_at_b, g) ==
          doctest::Approx(transition_measure(m, d, q, TransitionSetId::b_at_b, g).value).epsilon(1e-13));
    CHECK(detailed_balance(local_coin_model(), local_coin_model().equilibrium(), q, TransitionSetId::b_at_b, g) == 0.0);
  }
}
