// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "cli.hpp"
#include "hvlab/inequalities.hpp"
#include "hvlab/kernels.hpp"
#include "hvlab/models.hpp"
#include "hvlab/ordering.hpp"
#include "hvlab/protocols.hpp"
#include "hvlab/transition.hpp"
#include "oracles.hpp"

using namespace hvlab;
namespace fs = std::filesystem;

namespace {

constexpr double kTight = 1e-12;
constexpr double kLoose = 1e-3;
constexpr double kSigmas = 4.0;
constexpr int kRandomStats = 100000;
constexpr std::int64_t kGrid = 1024;
constexpr std::int64_t kSamples = 1'000'000;
constexpr std::uint64_t kSeed = 20240615;

const double kQuarterPi = oracle::kPi / 4;
const double kHardyPeak = oracle::kSqrt2 - 1;

struct Verdict {
  bool pass = true;
  std::string detail;
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::vector<std::vector<std::string>> rows;
  for (std::string line; std::getline(f, line);) rows.push_back(split(line));
  return rows;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  if (code != 0) std::fprintf(stderr, "hvlab %s failed: %s", args.front().c_str(), err.str().c_str());
  return code;
}

fs::path workdir() {
  const fs::path dir = fs::temp_directory_path() / "hvlab_acceptance";
  fs::create_directories(dir);
  return dir;
}

double chain_theta(int i, int steps) { return 0.0 + (oracle::kPi - 0.0) * i / (steps - 1); }

std::array<double, 8> eight_bounds(const HardyBounds& h) {
  return {h.alpha[0], h.alpha[1], h.alpha[2], h.alpha[3], h.beta[0], h.beta[1], h.beta[2], h.beta[3]};
}

Verdict hardy_curve() {
  const fs::path csv = workdir() / "quantum_sweep.csv";
  if (cli({"sweep", "--model", "quantum", "--out", csv.string()}) != 0) return {false, "sweep command failed"};
  const auto rows = read_csv(csv);
  if (rows.size() != 182 || rows[0][1] != "hardy_chain") return {false, fmt::format("{} rows", rows.size())};
  double worst = 0.0;
  for (int i = 0; i < 181; ++i) {
    const double got = std::stod(rows[i + 1][1]);
    worst = std::max(worst, std::abs(got - oracle::hardy_chain_curve(chain_theta(i, 181))));
  }
  const double at_quarter = std::stod(rows[46][1]);
  const bool pass = worst <= kTight && std::abs(at_quarter - kHardyPeak) <= kTight;
  return {pass, fmt::format("max |curve error| = {:.3g} over 181 points; value at pi/4 = {}", worst, rows[46][1])};
}

Verdict unified_bell() {
  const HardyBounds h = hardy_bounds(quantum_stats(chain_quadruple(kQuarterPi)));
  const double lhs_err = std::abs(h.bell_lhs - 2 * oracle::kSqrt2);
  double worst = 0.0;
  int positive = 0;
  for (int i = 0; i < 181; ++i) {
    const HardyBounds hb = hardy_bounds(quantum_stats(chain_quadruple(chain_theta(i, 181))));
    if (hb.unified > 0.0) {
      ++positive;
      worst = std::max(worst, std::abs(hb.unified - (hb.bell_lhs - 2.0) / 2.0));
    }
  }
  return {lhs_err <= kTight && worst <= kTight && positive > 0,
          fmt::format("|bell_lhs - 2 sqrt2| = {:.3g}; half-violation max error {:.3g} over {} violating points",
                      lhs_err, worst, positive)};
}

template <class Check>
void random_stats(std::uint64_t seed, Check&& check) {
  std::mt19937_64 rng(seed);
  for (int n = 0; n < kRandomStats; ++n) check(JointStats::from_p_plus(oracle::random_p_plus(rng)));
}

Verdict lemma() {
  int worst_count = 0;
  double worst_sum = 0.0;
  random_stats(kSeed, [&](const JointStats& s) {
    worst_count = std::max(worst_count, lemma_check(s));
    const HardyBounds h = hardy_bounds(s);
    for (int i = 0; i < 4; ++i) worst_sum = std::max(worst_sum, std::abs(h.alpha[i] + h.beta[i] + 2.0));
  });
  return {worst_count <= 1 && worst_sum <= kTight,
          fmt::format("max positive bounds = {}; max |alpha_i + beta_i + 2| = {:.3g} over {} stats", worst_count,
                      worst_sum, kRandomStats)};
}

Verdict unified_is_max() {
  double worst = 0.0;
  random_stats(kSeed + 1, [&](const JointStats& s) {
    const HardyBounds h = hardy_bounds(s);
    const auto b = eight_bounds(h);
    const double best = std::max(0.0, *std::max_element(b.begin(), b.end()));
    worst = std::max(worst, std::abs(h.unified - best));
  });
  return {worst <= kTight, fmt::format("max |unified - max(0, bounds)| = {:.3g} over {} stats", worst, kRandomStats)};
}

Verdict faithfulness() {
  const HvModel m = singlet_model();
  std::mt19937_64 rng(kSeed);
  double grid_worst = 0.0;
  double mc_worst_sigmas = 0.0;
  for (int i = 0; i < 32; ++i) {
    const double a = oracle::random_angle(rng);
    const double b = oracle::random_angle(rng);
    const AngleQuadruple q = make_quadruple(a, a, b, b);
    const double t = theta_between(q.a, q.b);
    const JointStats g = stats_from_model(m, m.equilibrium(), q, Scheme::grid(kGrid));
    grid_worst = std::max({grid_worst, std::abs(g.p_plus[0] - oracle::singlet_p_plus(t)),
                           std::abs(g.p_minus[0] - oracle::singlet_p_minus(t))});
    const JointStats mc = stats_from_model(m, m.equilibrium(), q, Scheme::monte_carlo(kSamples, kSeed + i));
    const double dev = std::abs(mc.p_minus[0] - oracle::singlet_p_minus(t));
    mc_worst_sigmas = std::max(mc_worst_sigmas, mc.std_error[0] > 0.0 ? dev / mc.std_error[0] : (dev > 0 ? 1e9 : 0));
  }
  return {grid_worst <= kLoose && mc_worst_sigmas <= kSigmas,
          fmt::format("grid max error {:.3g} (32 pairs); Monte Carlo worst deviation {:.2f} std errors", grid_worst,
                      mc_worst_sigmas)};
}

Verdict parity() {
  const HvModel m = singlet_model();
  const TransitionReport r = full_report(m, m.equilibrium(), chain_quadruple(kQuarterPi), Scheme::grid(kGrid));
  const double diff = std::abs(r.sum_escape_regions() - r.sigma_minus.value);
  const double eps = 4 * std::numeric_limits<double>::epsilon();
  return {diff <= eps && r.sigma_minus.value >= kHardyPeak - kLoose,
          fmt::format("|sum P(T_i) - P(sigma_-)| = {:.3g}; P(sigma_-) = {:.6f} (need >= {:.6f})", diff,
                      r.sigma_minus.value, kHardyPeak - kLoose)};
}

Verdict locality_null() {
  const HvModel m = local_coin_model();
  const AngleQuadruple q = chain_quadruple(kQuarterPi);
  const TransitionReport r = full_report(m, m.equilibrium(), q, Scheme::grid(kGrid));
  double set_max = 0.0;
  for (const MeasureEstimate& e : r.set_measures) set_max = std::max(set_max, e.value);
  const HardyBounds h = hardy_bounds(stats_from_outcomes(r.outcomes));
  const double region_bits = average_bits_identity(r).average_bits.value;
  const CommSummary game = simulate_game(m, m.equilibrium(), q, kSamples, kSeed);
  const bool pass =
      set_max == 0.0 && h.bell_lhs <= 2.0 && h.unified == 0.0 && region_bits == 0.0 && game.average_bits.value == 0.0;
  return {pass, fmt::format("max transition measure {}; bell_lhs {:.12g}; unified {}; average bits {} (regions) / {} "
                            "(game)",
                            set_max, h.bell_lhs, h.unified, region_bits, game.average_bits.value)};
}

Verdict communication() {
  const HvModel m = singlet_model();
  const AngleQuadruple q = chain_quadruple(kQuarterPi);
  const CommSummary game = simulate_game(m, m.equilibrium(), q, kSamples, kSeed);
  const TransitionReport r = full_report(m, m.equilibrium(), q, Scheme::monte_carlo(kSamples, kSeed + 7));
  const Estimate region = average_bits_identity(r).average_bits;
  const double floor = kHardyPeak - kSigmas * game.average_bits.std_error;
  const double combined = std::hypot(game.average_bits.std_error, region.std_error);
  const double gap = std::abs(game.average_bits.value - region.value);
  return {game.average_bits.value >= floor && gap <= kSigmas * combined,
          fmt::format("game bits {:.6f} +- {:.2g} (floor {:.6f}); region integral {:.6f} +- {:.2g}; gap {:.2f} "
                      "combined std errors",
                      game.average_bits.value, game.average_bits.std_error, floor, region.value, region.std_error,
                      gap / combined)};
}

Verdict signal_locality() {
  const HvModel m = singlet_model();
  const Scheme g = Scheme::grid(kGrid);
  std::mt19937_64 rng(kSeed);
  double worst_shift = 0.0;
  double worst_balance = 0.0;
  for (int i = 0; i < 16; ++i) {
    const Angle a1 = make_angle(oracle::random_angle(rng));
    const Angle a2 = make_angle(oracle::random_angle(rng));
    const Angle b = make_angle(oracle::random_angle(rng));
    worst_shift = std::max(worst_shift, marginal_shift(m, m.equilibrium(), b, a1, a2, g));
    const AngleQuadruple q{a1, a2, b, b};
    worst_balance = std::max(worst_balance, detailed_balance(m, m.equilibrium(), q, TransitionSetId::b_at_b, g));
  }
  const double biased =
      marginal_shift(m, biased_distribution(m, 1.0), make_angle(0.0), make_angle(0.0), make_angle(oracle::kPi / 2), g);
  return {worst_shift <= kLoose && worst_balance <= kLoose && std::abs(biased - 0.5) <= kLoose,
          fmt::format("equilibrium max shift {:.3g}, max balance gap {:.3g} (16 pairs); q=1 shift {:.6f}", worst_shift,
                      worst_balance, biased)};
}

Verdict moc() {
  const MocReport r = moc_demo(sequential_singlet_model(), chain_quadruple(kQuarterPi), Scheme::grid(kGrid));
  const double expected = (1.0 + std::cos(kQuarterPi)) / 2.0;
  const double err = std::abs(r.witness.moc_measure.value - expected);
  const bool pass = err <= kLoose && r.induced_sigma_minus.value == 0.0 &&
                    std::abs(r.quantum_required - kHardyPeak) <= kTight && r.quantum_required > 0.0 &&
                    r.impossibility_shown();
  return {pass, fmt::format("moc_measure {:.6f} (expected {:.6f}); induced P(sigma_-) {}; quantum requires {:.9f}",
                            r.witness.moc_measure.value, expected, r.induced_sigma_minus.value, r.quantum_required)};
}

Verdict tracer() {
  const HvModel m = singlet_model();
  const AngleQuadruple q = chain_quadruple(kQuarterPi);
  const Scheme g = Scheme::grid(kGrid);
  const std::int64_t points = g.point_count(m.space().dimension());
  std::int64_t odd = 0;
  std::int64_t even = 0;
  std::int64_t wrong = 0;
  for (std::int64_t i = 0; i < points; ++i) {
    const LambdaPoint p = scheme_point(g, m.space().dimension(), i);
    const ContextOutcomes o = evaluate_contexts(m, q, p);
    const MembershipVector mv = memberships_of(o);
    const ContradictionTrace t = contradiction_trace(o, mv, Hypothesis::all_sets_empty);
    if (mv.count() % 2 == 1) {
      ++odd;
      if (t.consistent || t.failing_step != kFinalDeductionStep) ++wrong;
    } else {
      ++even;
      if (!t.consistent) ++wrong;
    }
  }
  return {wrong == 0 && odd > 0, fmt::format("{} odd-membership points contradicted at step {}, {} even points "
                                             "consistent, {} mismatches",
                                             odd, kFinalDeductionStep, even, wrong)};
}

Verdict reproducibility() {
  const fs::path dir = workdir();
  const std::vector<std::vector<std::string>> runs = {
      {"stats", "--model", "singlet", "--theta", "0.6", "--mc", "200000", "--seed", "5"},
      {"transition", "--model", "singlet", "--theta", "0.7853981633974483", "--mc", "200000", "--seed", "6"},
      {"sweep", "--model", "singlet", "--steps", "7", "--mc", "50000", "--seed", "7"},
      {"comm", "--model", "singlet", "--runs", "200000", "--seed", "8"},
      {"signal", "--model", "singlet", "--q", "0.8", "--mc", "200000", "--seed", "9"},
      {"moc", "--theta", "0.7853981633974483", "--mc", "200000", "--seed", "10"}};
  int identical = 0;
  int replayed = 0;
  for (const auto& base : runs) {
    const std::string cmd = base.front();
    std::vector<std::string> first = base;
    std::vector<std::string> second = base;
    const fs::path a = dir / (cmd + "_1.csv");
    const fs::path b = dir / (cmd + "_2.csv");
    const fs::path c = dir / (cmd + "_replay.csv");
    first.insert(first.end(), {"--out", a.string()});
    second.insert(second.end(), {"--out", b.string()});
    if (cli(first) != 0 || cli(second) != 0) return {false, cmd + " failed"};
    if (slurp(a) == slurp(b) && !slurp(a).empty()) ++identical;
    if (cli({cmd, "--config", a.string() + ".manifest", "--out", c.string()}) != 0) return {false, cmd + " replay"};
    if (slurp(a) == slurp(c)) ++replayed;
  }
  const int n = static_cast<int>(runs.size());
  return {identical == n && replayed == n,
          fmt::format("{}/{} subcommands byte-identical on rerun, {}/{} on manifest replay", identical, n, replayed, n)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"Hardy-bound curve", hardy_curve},
      {"unified Bell relation", unified_bell},
      {"lemma on random statistics", lemma},
      {"unified equals max", unified_is_max},
      {"model faithfulness", faithfulness},
      {"parity identity", parity},
      {"locality null case", locality_null},
      {"communication bound", communication},
      {"signal locality", signal_locality},
      {"measurement-ordering contextuality", moc},
      {"contradiction tracer", tracer},
      {"reproducibility", reproducibility},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, fmt::format("exception: {}", e.what())};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!v.pass) ++failed;
    std::printf("[%s] %2zu %s: %s (%.1fs)\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.c_str(),
                secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
