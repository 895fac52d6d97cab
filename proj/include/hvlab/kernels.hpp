#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include "hvlab/measure.hpp"

namespace hvlab {

/// Maps a point to a bucket index in [0, buckets).
using BucketClassifier = std::function<std::size_t(const LambdaPoint&)>;

/// The i-th evaluation point of the scheme: the midpoint of grid cell i
/// (axis 0 varies slowest) or the i-th Monte Carlo draw.
LambdaPoint scheme_point(const Scheme& scheme, std::size_t dimension, std::int64_t index);

/// Reference kernel: one accumulator, points visited in index order.
SweepResult sweep_serial(const Distribution& dist, const Scheme& scheme, std::size_t buckets,
                         const BucketClassifier& classify);

/// OpenMP kernel. Points are cut into blocks whose size depends only on the
/// point count; block histograms are combined by a fixed pairwise tree, so
/// the result is bit-identical for any thread count.
SweepResult sweep(const Distribution& dist, const Scheme& scheme, std::size_t buckets,
                  const BucketClassifier& classify);

/// Block size used by sweep() for a given point count.
std::int64_t sweep_block_size(std::int64_t points);

}  // namespace hvlab
