#include "hvlab/protocols.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <vector>

#include <omp.h>

#include "hvlab/kernels.hpp"
#include "hvlab/random.hpp"

namespace hvlab {

namespace {

constexpr std::int64_t kRunBlock = 16384;
constexpr int kMaxRejections = 1 << 20;

struct GameTally {
  double bits = 0.0;
  double bits_sq = 0.0;
  double odd = 0.0;
  std::array<std::int64_t, kContexts> runs{};
  std::array<std::int64_t, kContexts> plus{};

  void add(const CommRunLog& r) {
    bits += r.bits;
    bits_sq += r.bits * r.bits;
    odd += std::popcount(r.membership_mask) % 2;
    const int c = r.context();
    ++runs[c];
    if (r.alice == r.bob) ++plus[c];
  }
  void merge(const GameTally& o) {
    bits += o.bits;
    bits_sq += o.bits_sq;
    odd += o.odd;
    for (int c = 0; c < kContexts; ++c) {
      runs[c] += o.runs[c];
      plus[c] += o.plus[c];
    }
  }
};

LambdaPoint draw_lambda(const Distribution& dist, std::uint64_t seed, std::uint64_t run) {
  const std::size_t dim = dist.space().dimension();
  LambdaPoint p(dim);
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    const auto a = static_cast<std::uint64_t>(attempt);
    for (std::size_t k = 0; k < dim; ++k) {
      p.set(k, rng::uniform01(seed, rng::game_lambda, run, a * kMaxLambdaDimension + k));
    }
    const double u = rng::uniform01(seed, rng::game_accept, run, a);
    if (u * dist.density_bound() < dist.density(p)) return p;
  }
  throw InvariantViolation("rejection sampling did not accept a point; check the density bound");
}

CommRunLog play_run(const HvModel& model, const Distribution& dist, const AngleQuadruple& q, std::uint64_t seed,
                    std::int64_t run) {
  const auto idx = static_cast<std::uint64_t>(run);
  CommRunLog r;
  r.run = run;
  r.lambda = draw_lambda(dist, seed, idx);
  r.alice_primed = rng::uniform01(seed, rng::game_alice, idx, 0) >= 0.5;
  r.bob_primed = rng::uniform01(seed, rng::game_bob, idx, 0) >= 0.5;
  const ContextOutcomes all = evaluate_contexts(model, q, r.lambda);
  r.membership_mask = memberships_of(all).mask();
  r.bits = bits_required(r.membership_mask);
  const int c = r.context();
  r.alice = all.alice[c];
  r.bob = all.bob[c];
  return r;
}

}  // namespace

int bits_required(std::uint8_t mask) {
  const auto has = [mask](TransitionSetId id) { return (mask >> index_of(id)) & 1u; };
  const int from_alice = has(TransitionSetId::b_at_b) || has(TransitionSetId::b_at_b_prime);
  const int from_bob = has(TransitionSetId::a_at_a) || has(TransitionSetId::a_at_a_prime);
  return from_alice + from_bob;
}

int bits_required(const MembershipVector& memberships) { return bits_required(memberships.mask()); }

int CommRunLog::context() const {
  if (!alice_primed) return bob_primed ? 3 : 0;
  return bob_primed ? 2 : 1;
}

CommSummary simulate_game(const HvModel& model, const Distribution& dist, const AngleQuadruple& q,
                          std::int64_t n_runs, std::uint64_t seed, const RunLogSink& sink) {
  if (n_runs < 1) throw std::invalid_argument("the game needs at least one run");
  require_same_space(model, dist);

  const std::int64_t blocks = (n_runs + kRunBlock - 1) / kRunBlock;
  std::vector<GameTally> tallies(static_cast<std::size_t>(blocks));
  std::exception_ptr failure;

  // With a sink, blocks are generated a batch at a time and flushed in order.
  const std::int64_t batch = sink ? std::max<std::int64_t>(1, omp_get_max_threads()) : blocks;
  std::vector<std::vector<CommRunLog>> logs(sink ? static_cast<std::size_t>(batch) : 0);

  for (std::int64_t first = 0; first < blocks; first += batch) {
    const std::int64_t last = std::min(blocks, first + batch);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t blk = first; blk < last; ++blk) {
      try {
        GameTally& t = tallies[static_cast<std::size_t>(blk)];
        std::vector<CommRunLog>* log = sink ? &logs[static_cast<std::size_t>(blk - first)] : nullptr;
        if (log) log->clear();
        const std::int64_t end = std::min(n_runs, (blk + 1) * kRunBlock);
        for (std::int64_t run = blk * kRunBlock; run < end; ++run) {
          const CommRunLog r = play_run(model, dist, q, seed, run);
          t.add(r);
          if (log) log->push_back(r);
        }
      } catch (...) {
#pragma omp critical(hvlab_game_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
    if (sink) {
      for (std::int64_t blk = first; blk < last; ++blk) {
        for (const CommRunLog& r : logs[static_cast<std::size_t>(blk - first)]) sink(r);
      }
    }
  }

  GameTally total;
  for (const GameTally& t : tallies) total.merge(t);

  CommSummary s;
  s.n_runs = n_runs;
  s.seed = seed;
  const auto n = static_cast<double>(n_runs);
  auto mean_and_error = [n](double sum, double sum_sq) {
    Estimate e;
    e.value = sum / n;
    if (n > 1.0) e.std_error = std::sqrt(std::max(0.0, (sum_sq - n * e.value * e.value) / (n - 1.0)) / n);
    return e;
  };
  s.average_bits = mean_and_error(total.bits, total.bits_sq);
  s.sigma_minus_bound = mean_and_error(total.odd, total.odd);
  for (int c = 0; c < kContexts; ++c) {
    s.context_runs[c] = total.runs[c];
    if (total.runs[c] == 0) {
      // no data for this context
      s.stats.p_plus[c] = 0.5;
      s.stats.p_minus[c] = 0.5;
      s.stats.std_error[c] = 0.5;
      continue;
    }
    const auto m = static_cast<double>(total.runs[c]);
    const double p = static_cast<double>(total.plus[c]) / m;
    s.stats.p_plus[c] = p;
    s.stats.p_minus[c] = 1.0 - p;
    s.stats.std_error[c] = std::sqrt(p * (1.0 - p) / m);
  }
  return s;
}

BitsIdentity average_bits_identity(const TransitionReport& report) {
  std::array<double, 256> bits{};
  std::array<double, 256> odd{};
  for (std::size_t c = 0; c < 256; ++c) {
    const MembershipVector m = memberships_of(ContextOutcomes::from_code(static_cast<std::uint8_t>(c)));
    bits[c] = bits_required(m);
    odd[c] = m.count() % 2;
  }
  BitsIdentity id{report.outcomes.functional(bits), report.outcomes.functional(odd)};
  if (id.average_bits.value < id.lower_bound.value - 1e-12) {
    throw InvariantViolation("average bits fell below P(sigma_-)");
  }
  return id;
}

double marginal_shift(const HvModel& model, const Distribution& dist, Angle b_setting, Angle a1, Angle a2,
                      const Scheme& scheme) {
  require_same_space(model, dist);
  const SweepResult r = sweep(dist, scheme, 4, [&](const LambdaPoint& p) -> std::size_t {
    return 2u * (model.outcome_b(a1, b_setting, p) == Outcome::plus) +
           (model.outcome_b(a2, b_setting, p) == Outcome::plus);
  });
  const double first = r.measure([](std::size_t b) { return b >= 2; }).value;
  const double second = r.measure([](std::size_t b) { return b % 2 == 1; }).value;
  return std::abs(first - second);
}

double detailed_balance(const HvModel& model, const Distribution& dist, const AngleQuadruple& q,
                        TransitionSetId which, const Scheme& scheme) {
  const PartitionMeasure pm = partition_measures(model, dist, q, which, scheme);
  return std::abs(pm.plus_minus.value - pm.minus_plus.value);
}

}  // namespace hvlab
