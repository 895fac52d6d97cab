#include "hvlab/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hvlab/kernels.hpp"

namespace hvlab {

namespace {

constexpr double kStatsTolerance = 1e-12;

constexpr std::array<std::array<Outcome, kContexts>, 4> kAlphaPatterns = {{
    {Outcome::plus, Outcome::plus, Outcome::plus, Outcome::minus},
    {Outcome::plus, Outcome::plus, Outcome::minus, Outcome::plus},
    {Outcome::plus, Outcome::minus, Outcome::plus, Outcome::plus},
    {Outcome::minus, Outcome::plus, Outcome::plus, Outcome::plus},
}};

constexpr std::array<Outcome, kContexts> kChainPattern = {Outcome::minus, Outcome::minus, Outcome::minus,
                                                          Outcome::plus};

// x = |p1+ - p2-| + |p3+ - p4+| and y = |p1+ - p2+| + |p3+ - p4-|; each
// minus one is the max over one group of four Hardy bounds.
std::pair<double, double> bell_terms(const JointStats& s) {
  const double x = std::abs(s.p_plus[0] - s.p_minus[1]) + std::abs(s.p_plus[2] - s.p_plus[3]);
  const double y = std::abs(s.p_plus[0] - s.p_plus[1]) + std::abs(s.p_plus[2] - s.p_minus[3]);
  return {x, y};
}

}  // namespace

JointStats JointStats::from_p_plus(const std::array<double, kContexts>& p_plus) {
  JointStats s;
  for (int i = 0; i < kContexts; ++i) {
    s.p_plus[i] = p_plus[i];
    s.p_minus[i] = 1.0 - p_plus[i];
  }
  return s;
}

void JointStats::validate() const {
  for (int i = 0; i < kContexts; ++i) {
    if (!(p_plus[i] >= 0.0 && p_plus[i] <= 1.0 && p_minus[i] >= 0.0 && p_minus[i] <= 1.0)) {
      throw std::invalid_argument("joint statistics must lie in [0, 1]");
    }
    if (std::abs(p_plus[i] + p_minus[i] - 1.0) > kStatsTolerance) {
      throw std::invalid_argument("p_plus + p_minus must equal 1 in every context");
    }
  }
}

JointStats stats_from_model(const HvModel& model, const Distribution& dist, const AngleQuadruple& q,
                            const Scheme& scheme) {
  require_same_space(model, dist);
  const SweepResult r = sweep(dist, scheme, 16, [&](const LambdaPoint& p) -> std::size_t {
    std::size_t code = 0;
    for (int i = 0; i < kContexts; ++i) {
      const ContextSettings s = context_settings(q, i);
      if (model.outcome_a(s.alice, s.bob, p) == model.outcome_b(s.alice, s.bob, p)) code |= 1u << i;
    }
    return code;
  });
  JointStats stats;
  for (int i = 0; i < kContexts; ++i) {
    const MeasureEstimate m = r.measure([i](std::size_t code) { return (code >> i) & 1u; });
    stats.p_plus[i] = m.value;
    stats.p_minus[i] = 1.0 - m.value;
    stats.std_error[i] = m.std_error;
  }
  return stats;
}

JointStats stats_from_outcomes(const SweepResult& outcomes) {
  if (outcomes.histogram.size() != 256) throw std::invalid_argument("expected a 256-bucket outcome sweep");
  JointStats stats;
  for (int i = 0; i < kContexts; ++i) {
    const MeasureEstimate m = outcomes.measure([i](std::size_t code) {
      return ContextOutcomes::from_code(static_cast<std::uint8_t>(code)).product(i) == Outcome::plus;
    });
    stats.p_plus[i] = m.value;
    stats.p_minus[i] = 1.0 - m.value;
    stats.std_error[i] = m.std_error;
  }
  return stats;
}

JointStats quantum_stats(const AngleQuadruple& q) {
  JointStats stats;
  for (int i = 0; i < kContexts; ++i) {
    const ContextSettings s = context_settings(q, i);
    const double c = std::cos(theta_between(s.alice, s.bob));
    stats.p_plus[i] = 0.5 * (1.0 - c);
    stats.p_minus[i] = 0.5 * (1.0 + c);
  }
  return stats;
}

double HardyBounds::max_bound() const {
  return std::max(*std::max_element(alpha.begin(), alpha.end()), *std::max_element(beta.begin(), beta.end()));
}

std::array<Outcome, kContexts> bound_sign_pattern(bool beta, int i) {
  if (i < 0 || i >= 4) throw std::out_of_range("Hardy bound index must be in [0, 4)");
  std::array<Outcome, kContexts> pattern = kAlphaPatterns[i];
  if (beta) {
    for (Outcome& o : pattern) o = -o;
  }
  return pattern;
}

double hardy_bound_for_pattern(const JointStats& stats, const std::array<Outcome, kContexts>& signs) {
  double sum = 0.0;
  for (int i = 0; i < kContexts; ++i) sum += stats.p(i, signs[i]);
  return sum - 3.0;
}

double chain_hardy_bound(const JointStats& stats) {
  return std::max(0.0, hardy_bound_for_pattern(stats, kChainPattern));
}

HardyBounds hardy_bounds(const JointStats& stats) {
  stats.validate();
  HardyBounds h;
  for (int i = 0; i < 4; ++i) {
    h.alpha[i] = hardy_bound_for_pattern(stats, bound_sign_pattern(false, i));
    h.beta[i] = hardy_bound_for_pattern(stats, bound_sign_pattern(true, i));
  }
  const auto [x, y] = bell_terms(stats);
  h.unified = std::max(0.0, x - 1.0) + std::max(0.0, y - 1.0);
  h.bell_lhs = x + y + std::abs(x - y);
  return h;
}

double unified_bound_absolute_form(const JointStats& stats) {
  const auto [x, y] = bell_terms(stats);
  return 0.5 * (x + y + std::abs(x - 1.0) + std::abs(y - 1.0)) - 1.0;
}

ChshValues chsh_correlations(const JointStats& stats) {
  ChshValues v;
  for (int i = 0; i < kContexts; ++i) v.correlation[i] = stats.p_plus[i] - stats.p_minus[i];
  const auto& c = v.correlation;
  v.lhs_plus = std::abs(c[0] + c[3]) + std::abs(c[1] - c[2]);
  v.lhs_minus = std::abs(c[0] - c[3]) + std::abs(c[1] + c[2]);
  return v;
}

int lemma_check(const JointStats& stats) {
  const HardyBounds h = hardy_bounds(stats);
  int positive = 0;
  for (int i = 0; i < 4; ++i) positive += (h.alpha[i] > 0.0) + (h.beta[i] > 0.0);
  return positive;
}

}  // namespace hvlab
