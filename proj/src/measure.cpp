#include "hvlab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "hvlab/kernels.hpp"

namespace hvlab {

Scheme Scheme::grid(std::int64_t resolution) {
  if (resolution <= 0) throw std::invalid_argument("grid resolution must be positive");
  Scheme s;
  s.kind_ = Kind::grid;
  s.resolution_ = resolution;
  return s;
}

Scheme Scheme::monte_carlo(std::int64_t samples, std::uint64_t seed) {
  if (samples <= 0) throw std::invalid_argument("Monte Carlo sample count must be positive");
  Scheme s;
  s.kind_ = Kind::monte_carlo;
  s.resolution_ = 0;
  s.samples_ = samples;
  s.seed_ = seed;
  return s;
}

std::int64_t Scheme::point_count(std::size_t dimension) const {
  if (kind_ == Kind::monte_carlo) return samples_;
  std::int64_t total = 1;
  for (std::size_t k = 0; k < dimension; ++k) {
    if (total > std::numeric_limits<std::int64_t>::max() / resolution_) {
      throw std::invalid_argument("grid too large for this dimension");
    }
    total *= resolution_;
  }
  return total;
}

std::string Scheme::describe() const {
  return is_grid() ? fmt::format("grid({})", resolution_) : fmt::format("monte_carlo({})", samples_);
}

void BucketHistogram::merge(const BucketHistogram& other) {
  if (other.size() != size()) throw std::invalid_argument("histogram bucket counts differ");
  for (std::size_t b = 0; b < sum_.size(); ++b) {
    sum_[b] += other.sum_[b];
    sum_sq_[b] += other.sum_sq_[b];
  }
}

Estimate SweepResult::functional(std::span<const double> coeff) const {
  if (coeff.size() != histogram.size()) throw std::invalid_argument("coefficient count must match buckets");
  const auto n = static_cast<double>(points);
  double first = 0.0;
  double second = 0.0;
  for (std::size_t b = 0; b < coeff.size(); ++b) {
    if (coeff[b] == 0.0) continue;
    first += coeff[b] * histogram.sum(b);
    second += coeff[b] * coeff[b] * histogram.sum_sq(b);
  }
  Estimate e;
  e.value = first / n;
  if (!scheme.is_grid() && points > 1) {
    // sample variance of f(lambda) rho(lambda), then divided by n
    const double var = std::max(0.0, (second - n * e.value * e.value) / (n - 1.0));
    e.std_error = std::sqrt(var / n);
  }
  return e;
}

MeasureEstimate SweepResult::measure(const std::function<bool(std::size_t)>& member) const {
  std::vector<double> coeff(histogram.size(), 0.0);
  for (std::size_t b = 0; b < coeff.size(); ++b) coeff[b] = member(b) ? 1.0 : 0.0;
  const Estimate e = functional(coeff);
  return {std::clamp(e.value, 0.0, 1.0), e.std_error, scheme};
}

MeasureEstimate estimate_measure(const Distribution& dist, const Indicator& indicator, const Scheme& scheme) {
  const SweepResult r =
      sweep(dist, scheme, 2, [&](const LambdaPoint& p) -> std::size_t { return indicator(p) ? 1 : 0; });
  return r.measure([](std::size_t b) { return b == 1; });
}

Estimate total_mass(const Distribution& dist, const Scheme& scheme) {
  const SweepResult r = sweep(dist, scheme, 1, [](const LambdaPoint&) -> std::size_t { return 0; });
  const double one = 1.0;
  return r.functional(std::span<const double>(&one, 1));
}

}  // namespace hvlab
