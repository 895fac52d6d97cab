#include "hvlab/kernels.hpp"

#include <algorithm>
#include <exception>
#include <stdexcept>
#include <vector>

#include <omp.h>

#include "hvlab/random.hpp"

namespace hvlab {

namespace {

constexpr std::int64_t kMinBlock = 8192;
constexpr std::int64_t kMaxBlocks = 4096;

void check_bucket(std::size_t bucket, std::size_t buckets) {
  if (bucket >= buckets) throw std::out_of_range("classifier returned a bucket out of range");
}

}  // namespace

LambdaPoint scheme_point(const Scheme& scheme, std::size_t dimension, std::int64_t index) {
  LambdaPoint p(dimension);
  if (scheme.is_grid()) {
    const std::int64_t res = scheme.resolution();
    const double inv = 1.0 / static_cast<double>(res);
    std::int64_t rest = index;
    for (std::size_t k = dimension; k-- > 0;) {
      const std::int64_t digit = rest % res;
      rest /= res;
      p.set(k, (static_cast<double>(digit) + 0.5) * inv);
    }
  } else {
    for (std::size_t k = 0; k < dimension; ++k) {
      p.set(k, rng::uniform01(scheme.seed(), rng::measure_points, static_cast<std::uint64_t>(index), k));
    }
  }
  return p;
}

std::int64_t sweep_block_size(std::int64_t points) {
  return std::max(kMinBlock, (points + kMaxBlocks - 1) / kMaxBlocks);
}

SweepResult sweep_serial(const Distribution& dist, const Scheme& scheme, std::size_t buckets,
                         const BucketClassifier& classify) {
  const std::size_t dim = dist.space().dimension();
  SweepResult out{BucketHistogram(buckets), scheme.point_count(dim), scheme};
  for (std::int64_t i = 0; i < out.points; ++i) {
    const LambdaPoint p = scheme_point(scheme, dim, i);
    const std::size_t b = classify(p);
    check_bucket(b, buckets);
    out.histogram.add(b, dist.density(p));
  }
  return out;
}

SweepResult sweep(const Distribution& dist, const Scheme& scheme, std::size_t buckets,
                  const BucketClassifier& classify) {
  const std::size_t dim = dist.space().dimension();
  const std::int64_t points = scheme.point_count(dim);
  const std::int64_t block = sweep_block_size(points);
  const std::int64_t blocks = (points + block - 1) / block;

  std::vector<BucketHistogram> partial(static_cast<std::size_t>(blocks), BucketHistogram(buckets));
  std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t blk = 0; blk < blocks; ++blk) {
    try {
      BucketHistogram& h = partial[static_cast<std::size_t>(blk)];
      const std::int64_t end = std::min(points, (blk + 1) * block);
      for (std::int64_t i = blk * block; i < end; ++i) {
        const LambdaPoint p = scheme_point(scheme, dim, i);
        const std::size_t b = classify(p);
        check_bucket(b, buckets);
        h.add(b, dist.density(p));
      }
    } catch (...) {
#pragma omp critical(hvlab_sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t stride = 1; stride < partial.size(); stride *= 2) {
    for (std::size_t i = 0; i + stride < partial.size(); i += 2 * stride) partial[i].merge(partial[i + stride]);
  }
  return {partial.empty() ? BucketHistogram(buckets) : std::move(partial.front()), points, scheme};
}

}  // namespace hvlab
