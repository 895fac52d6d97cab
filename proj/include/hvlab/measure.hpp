#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hvlab/core.hpp"

namespace hvlab {

/// Integration scheme over [0,1)^d: midpoint grid with `resolution` cells
/// per axis, or `samples` i.i.d. uniform points from a seeded counter-based
/// stream.
class Scheme {
 public:
  enum class Kind : std::uint8_t { grid, monte_carlo };

  static constexpr std::int64_t kDefaultResolution = 1024;
  static constexpr std::int64_t kDefaultSamples = 1'000'000;
  static constexpr std::uint64_t kDefaultSeed = 42;

  Scheme() = default;

  /// Both factories throw std::invalid_argument for a non-positive size.
  static Scheme grid(std::int64_t resolution = kDefaultResolution);
  static Scheme monte_carlo(std::int64_t samples = kDefaultSamples, std::uint64_t seed = kDefaultSeed);

  Kind kind() const { return kind_; }
  bool is_grid() const { return kind_ == Kind::grid; }
  std::int64_t resolution() const { return resolution_; }
  std::int64_t samples() const { return samples_; }
  std::uint64_t seed() const { return seed_; }

  /// Number of evaluation points for a space of the given dimension.
  std::int64_t point_count(std::size_t dimension) const;

  /// "grid(1024)" or "monte_carlo(1000000)".
  std::string describe() const;

  friend bool operator==(const Scheme&, const Scheme&) = default;

 private:
  Kind kind_ = Kind::grid;
  std::int64_t resolution_ = kDefaultResolution;
  std::int64_t samples_ = 0;
  std::uint64_t seed_ = 0;
};

/// Point estimate of an integral with its Monte Carlo standard error
/// (zero on the grid).
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

struct MeasureEstimate {
  double value = 0.0;
  double std_error = 0.0;
  Scheme scheme;
};

/// Per-bucket sums of density weights and of squared weights.
class BucketHistogram {
 public:
  explicit BucketHistogram(std::size_t buckets = 0) : sum_(buckets, 0.0), sum_sq_(buckets, 0.0) {}

  void add(std::size_t bucket, double weight) {
    sum_[bucket] += weight;
    sum_sq_[bucket] += weight * weight;
  }
  void merge(const BucketHistogram& other);

  std::size_t size() const { return sum_.size(); }
  double sum(std::size_t bucket) const { return sum_[bucket]; }
  double sum_sq(std::size_t bucket) const { return sum_sq_[bucket]; }

  friend bool operator==(const BucketHistogram&, const BucketHistogram&) = default;

 private:
  std::vector<double> sum_;
  std::vector<double> sum_sq_;
};

/// Histogram of one sweep over lambda, plus what is needed to normalise it.
/// Every point falls in exactly one bucket, so any linear functional of the
/// bucket indicators can be estimated from the same sample set.
struct SweepResult {
  BucketHistogram histogram;
  std::int64_t points = 0;
  Scheme scheme;

  /// Integral of sum_b coeff[b] * 1{bucket = b} * rho. coeff.size() must
  /// equal the bucket count.
  Estimate functional(std::span<const double> coeff) const;

  /// Measure of the union of buckets selected by `member`, clamped to [0,1].
  MeasureEstimate measure(const std::function<bool(std::size_t)>& member) const;
};

using Indicator = std::function<bool(const LambdaPoint&)>;

/// Density-weighted measure of {lambda : indicator(lambda)}.
MeasureEstimate estimate_measure(const Distribution& dist, const Indicator& indicator, const Scheme& scheme);

/// Total mass of dist under the scheme; used to check normalisation.
Estimate total_mass(const Distribution& dist, const Scheme& scheme);

}  // namespace hvlab
