// Serial reference kernel vs the OpenMP kernel on the transition-report sweep
// (256-bucket outcome classification of the singlet model).

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <omp.h>

#include "hvlab/kernels.hpp"
#include "hvlab/models.hpp"
#include "hvlab/transition.hpp"

using namespace hvlab;

namespace {

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s < best) best = s;
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const std::int64_t resolution = argc > 1 ? std::atoll(argv[1]) : 1024;
  const int reps = argc > 2 ? std::atoi(argv[2]) : 3;
  const HvModel model = singlet_model();
  const AngleQuadruple q = chain_quadruple(0.7853981633974483);
  const Scheme scheme = Scheme::grid(resolution);
  const BucketClassifier classify = [&](const LambdaPoint& p) -> std::size_t {
    return evaluate_contexts(model, q, p).code();
  };

  SweepResult serial;
  const double t_serial = best_of(reps, [&] { serial = sweep_serial(model.equilibrium(), scheme, 256, classify); });
  const double points = static_cast<double>(serial.points);
  std::printf("points %.0f, block %lld, max threads %d\n", points,
              static_cast<long long>(sweep_block_size(serial.points)), omp_get_max_threads());
  std::printf("%-10s %8s %12s %10s %14s\n", "kernel", "threads", "seconds", "speedup", "Mpoints/s");
  std::printf("%-10s %8d %12.4f %10.2f %14.2f\n", "serial", 1, t_serial, 1.0, points / t_serial / 1e6);

  for (int threads = 1; threads <= omp_get_num_procs(); threads *= 2) {
    omp_set_num_threads(threads);
    SweepResult par;
    const double t = best_of(reps, [&] { par = sweep(model.equilibrium(), scheme, 256, classify); });
    double max_diff = 0.0;
    for (std::size_t b = 0; b < 256; ++b) {
      const double d = par.histogram.sum(b) - serial.histogram.sum(b);
      max_diff = d > max_diff ? d : (-d > max_diff ? -d : max_diff);
    }
    std::printf("%-10s %8d %12.4f %10.2f %14.2f   max |bucket diff| %.3g\n", "openmp", threads, t, t_serial / t,
                points / t / 1e6, max_diff);
  }
  return 0;
}
