#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "hvlab/inequalities.hpp"
#include "hvlab/models.hpp"
#include "hvlab/ordering.hpp"
#include "hvlab/protocols.hpp"
#include "hvlab/serialize.hpp"
#include "hvlab/transition.hpp"
#include "svg.hpp"

namespace hvlab::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string model;
  std::string angles;
  double theta = std::numbers::pi / 4;
  std::int64_t grid = 0;
  std::int64_t mc = 0;
  std::uint64_t seed = Scheme::kDefaultSeed;
  std::string out;
  std::string svg;
  std::string manifest;
  bool json = false;
  double theta_min = 0.0;
  double theta_max = std::numbers::pi;
  int steps = 181;
  bool bounds = false;
  std::int64_t runs = 1'000'000;
  std::string log;
  double q = 0.5;
  std::string pair = "0,1.5707963267948966";

  bool has_grid = false;
  bool has_mc = false;
  bool has_q = false;
};

// What the manifest records besides the replayable option values.
struct RunRecord {
  std::string model;
  std::optional<AngleQuadruple> quadruple;
  std::string scheme;
  std::string seed;
  std::vector<std::string> outputs;
};

std::vector<double> parse_reals(const std::string& text, std::size_t expected, const char* what) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    std::string item = text.substr(pos, end - pos);
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size() || !std::isfinite(v)) {
      throw UsageError(fmt::format("malformed {}: '{}'", what, text));
    }
    values.push_back(v);
    pos = end + 1;
  }
  if (values.size() != expected) {
    throw UsageError(fmt::format("{} needs {} comma-separated values, got {}", what, expected, values.size()));
  }
  return values;
}

AngleQuadruple resolve_quadruple(const Options& o) {
  if (!o.angles.empty()) {
    const std::vector<double> v = parse_reals(o.angles, 4, "--angles");
    return make_quadruple(v[0], v[1], v[2], v[3]);
  }
  if (!std::isfinite(o.theta)) throw UsageError("--theta must be finite");
  return chain_quadruple(o.theta);
}

Scheme resolve_scheme(const Options& o) {
  try {
    if (o.has_mc) return Scheme::monte_carlo(o.mc, o.seed);
    return o.has_grid ? Scheme::grid(o.grid) : Scheme::grid();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::string model_name(const Options& o) { return o.model.empty() ? std::string("singlet") : o.model; }

NamedModel resolve_model(const std::string& name) {
  try {
    return model_by_name(name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::string quadruple_text(const AngleQuadruple& q) {
  return fmt::format("{:.17g},{:.17g},{:.17g},{:.17g}", q.a.radians(), q.a_prime.radians(), q.b.radians(),
                     q.b_prime.radians());
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw UsageError("cannot open for writing: " + path);
  f << text;
  if (!f.flush()) throw UsageError("write failed: " + path);
}

void emit(const Options& o, const std::string& text, std::ostream& out, RunRecord& rec) {
  if (o.out.empty()) {
    out << text;
    rec.outputs.emplace_back("-");
  } else {
    write_file(o.out, text);
    rec.outputs.push_back(o.out);
  }
}

std::string json_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void cmd_stats(const Options& o, std::ostream& out, RunRecord& rec) {
  const std::string name = model_name(o);
  const AngleQuadruple q = resolve_quadruple(o);
  JointStats stats;
  std::string scheme_text;
  std::string seed;
  if (name == "quantum") {
    stats = quantum_stats(q);
    scheme_text = "analytic";
  } else {
    const NamedModel m = resolve_model(name);
    const Scheme scheme = resolve_scheme(o);
    stats = stats_from_model(m.model, m.distribution, q, scheme);
    scheme_text = scheme.describe();
    seed = seed_text(scheme);
  }
  rec = {name, q, scheme_text, seed, {}};
  std::ostringstream os;
  if (o.json) {
    nlohmann::json j = {{"model", name}, {"quadruple", to_json(q)}, {"scheme", scheme_text}, {"stats", to_json(stats)}};
    if (!seed.empty()) j["seed"] = std::stoull(seed);
    os << json_text(j);
  } else {
    write_stats_csv(os, q, stats, scheme_text, seed);
  }
  emit(o, os.str(), out, rec);
}

void cmd_transition(const Options& o, std::ostream& out, RunRecord& rec) {
  const std::string name = model_name(o);
  if (name == "quantum") throw UsageError("transition needs a hidden-variable model, not 'quantum'");
  const NamedModel m = resolve_model(name);
  const AngleQuadruple q = resolve_quadruple(o);
  const Scheme scheme = resolve_scheme(o);
  const TransitionReport report = full_report(m.model, m.distribution, q, scheme);
  verify_report(report);
  rec = {name, q, scheme.describe(), seed_text(scheme), {}};
  std::ostringstream os;
  if (o.json) {
    os << json_text(to_json(report));
  } else {
    write_transition_csv(os, report);
  }
  emit(o, os.str(), out, rec);
}

struct SweepRow {
  double theta = 0.0;
  HardyBounds bounds;
  double hardy_chain = 0.0;
  std::optional<double> sigma_minus;
  std::optional<double> average_bits;
};

void cmd_sweep(const Options& o, std::ostream& out, RunRecord& rec) {
  if (o.steps < 2) throw UsageError("--steps must be at least 2");
  if (!std::isfinite(o.theta_min) || !std::isfinite(o.theta_max)) throw UsageError("sweep range must be finite");
  const std::string name = model_name(o);
  const bool quantum = name == "quantum";
  std::optional<NamedModel> m;
  if (!quantum) m = resolve_model(name);
  const Scheme scheme = resolve_scheme(o);

  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(o.steps));
  for (int i = 0; i < o.steps; ++i) {
    SweepRow row;
    row.theta = o.theta_min + (o.theta_max - o.theta_min) * i / (o.steps - 1);
    const AngleQuadruple q = chain_quadruple(row.theta);
    JointStats stats;
    if (quantum) {
      stats = quantum_stats(q);
    } else {
      const TransitionReport report = full_report(m->model, m->distribution, q, scheme);
      verify_report(report);
      stats = stats_from_outcomes(report.outcomes);
      row.sigma_minus = report.sigma_minus.value;
      row.average_bits = average_bits_identity(report).average_bits.value;
    }
    row.bounds = hardy_bounds(stats);
    row.hardy_chain = chain_hardy_bound(stats);
    rows.push_back(row);
  }
  rec = {name, std::nullopt, quantum ? "analytic" : scheme.describe(), quantum ? "" : seed_text(scheme), {}};

  std::ostringstream os;
  auto opt_real = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string(); };
  if (o.json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const SweepRow& r : rows) {
      nlohmann::json j = {{"theta", r.theta},
                          {"hardy_chain", r.hardy_chain},
                          {"unified", r.bounds.unified},
                          {"bell_lhs", r.bounds.bell_lhs}};
      if (o.bounds) {
        j["alpha"] = r.bounds.alpha;
        j["beta"] = r.bounds.beta;
      }
      if (r.sigma_minus) j["sigma_minus"] = *r.sigma_minus;
      if (r.average_bits) j["avg_bits"] = *r.average_bits;
      arr.push_back(j);
    }
    os << json_text({{"model", name}, {"scheme", rec.scheme}, {"rows", arr}});
  } else {
    os << "theta,hardy_chain,unified,bell_lhs,sigma_minus,avg_bits";
    if (o.bounds) os << ",alpha1,alpha2,alpha3,alpha4,beta1,beta2,beta3,beta4";
    os << '\n';
    for (const SweepRow& r : rows) {
      os << format_real(r.theta) << ',' << format_real(r.hardy_chain) << ',' << format_real(r.bounds.unified) << ','
         << format_real(r.bounds.bell_lhs) << ',' << opt_real(r.sigma_minus) << ',' << opt_real(r.average_bits);
      if (o.bounds) {
        for (double v : r.bounds.alpha) os << ',' << format_real(v);
        for (double v : r.bounds.beta) os << ',' << format_real(v);
      }
      os << '\n';
    }
  }
  emit(o, os.str(), out, rec);

  if (!o.svg.empty()) {
    std::vector<double> x;
    Series chain{"Hardy chain bound", "#1f77b4", {}};
    Series unified{"unified bound", "#ff7f0e", {}};
    Series sigma{"P(sigma-)", "#2ca02c", {}};
    Series bits{"average bits", "#d62728", {}};
    for (const SweepRow& r : rows) {
      x.push_back(r.theta);
      chain.y.push_back(r.hardy_chain);
      unified.y.push_back(r.bounds.unified);
      if (r.sigma_minus) sigma.y.push_back(*r.sigma_minus);
      if (r.average_bits) bits.y.push_back(*r.average_bits);
    }
    std::vector<Series> series = {chain, unified};
    if (!quantum) {
      series.push_back(sigma);
      series.push_back(bits);
    }
    write_file(o.svg, line_plot_svg(fmt::format("{} on the chain configuration", name), "theta (rad)", x, series));
    rec.outputs.push_back(o.svg);
  }
}

void cmd_comm(const Options& o, std::ostream& out, RunRecord& rec) {
  const std::string name = model_name(o);
  if (name == "quantum") throw UsageError("comm needs a hidden-variable model, not 'quantum'");
  const NamedModel m = resolve_model(name);
  const AngleQuadruple q = resolve_quadruple(o);
  if (o.runs < 1) throw UsageError("--runs must be positive");

  std::ofstream log;
  RunLogSink sink;
  if (!o.log.empty()) {
    log.open(o.log, std::ios::binary | std::ios::trunc);
    if (!log) throw UsageError("cannot open for writing: " + o.log);
    write_run_log_header(log, m.model.space().dimension());
    sink = [&log](const CommRunLog& r) { write_run_log_row(log, r); };
  }
  const CommSummary summary = simulate_game(m.model, m.distribution, q, o.runs, o.seed, sink);
  if (log.is_open() && !log.flush()) throw UsageError("write failed: " + o.log);

  rec = {name, q, fmt::format("game({})", o.runs), fmt::format("{}", o.seed), {}};
  std::ostringstream os;
  if (o.json) {
    nlohmann::json j = to_json(summary);
    j["model"] = name;
    j["quadruple"] = to_json(q);
    os << json_text(j);
  } else {
    write_comm_summary_csv(os, summary);
  }
  emit(o, os.str(), out, rec);
  if (!o.log.empty()) rec.outputs.push_back(o.log);
}

void cmd_signal(const Options& o, std::ostream& out, RunRecord& rec) {
  const std::string name = model_name(o);
  if (name == "quantum") throw UsageError("signal needs a hidden-variable model, not 'quantum'");
  NamedModel m = resolve_model(name);
  if (o.has_q) {
    try {
      m.distribution = biased_distribution(m.model, o.q);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  const std::vector<double> pair = parse_reals(o.pair, 2, "--pair");
  const Scheme scheme = resolve_scheme(o);
  // Bob sits at 0; Alice switches between the two relative angles.
  const Angle bob = make_angle(0.0);
  const AngleQuadruple q = make_quadruple(pair[0], pair[1], 0.0, 0.0);
  const double shift = marginal_shift(m.model, m.distribution, bob, q.a, q.a_prime, scheme);
  const double gap = detailed_balance(m.model, m.distribution, q, TransitionSetId::b_at_b, scheme);

  rec = {name, q, scheme.describe(), seed_text(scheme), {}};
  std::ostringstream os;
  if (o.json) {
    nlohmann::json j = {{"model", name},
                        {"distribution", m.distribution.label()},
                        {"theta1", pair[0]},
                        {"theta2", pair[1]},
                        {"marginal_shift", shift},
                        {"detailed_balance_gap", gap},
                        {"scheme", scheme.describe()}};
    if (!scheme.is_grid()) j["seed"] = scheme.seed();
    os << json_text(j);
  } else {
    os << "model,distribution,theta1,theta2,marginal_shift,detailed_balance_gap,scheme,seed\n";
    os << name << ',' << m.distribution.label() << ',' << format_real(pair[0]) << ',' << format_real(pair[1]) << ','
       << format_real(shift) << ',' << format_real(gap) << ',' << scheme.describe() << ',' << seed_text(scheme)
       << '\n';
  }
  emit(o, os.str(), out, rec);
}

void cmd_moc(const Options& o, std::ostream& out, RunRecord& rec) {
  const std::string name = o.model.empty() ? std::string("sequential-singlet") : o.model;
  std::optional<SequentialModel> model;
  if (name == "sequential-singlet") {
    model = sequential_singlet_model();
  } else if (name == "sequential-local") {
    model = sequential_local_model();
  } else {
    throw UsageError("moc needs a sequential model (sequential-singlet, sequential-local), got: " + name);
  }
  const AngleQuadruple q = resolve_quadruple(o);
  const Scheme scheme = resolve_scheme(o);
  const MocReport report = moc_demo(*model, q, scheme);
  if (report.induced_bell_lhs > 2.0 + 1e-9) {
    throw InvariantViolation(fmt::format("induced model violates the Bell inequality: {}", report.induced_bell_lhs));
  }
  rec = {name, q, scheme.describe(), seed_text(scheme), {}};
  std::ostringstream os;
  if (o.json) {
    nlohmann::json j = to_json(report);
    j["model"] = name;
    os << json_text(j);
  } else {
    write_moc_header(os);
    write_moc_row(os, report, scheme);
  }
  emit(o, os.str(), out, rec);
}

std::string manifest_text(const std::vector<std::string>& args, const std::string& command, const RunRecord& rec,
                          const CLI::App& app) {
  std::string text = "# hvlab run manifest\n";
  text += "# command line: hvlab";
  for (const std::string& a : args) text += " " + a;
  text += "\n";
  text += fmt::format("# version: {}\n", kToolVersion);
  text += fmt::format("# subcommand: {}\n", command);
  text += fmt::format("# model: {}\n", rec.model);
  if (rec.quadruple) text += fmt::format("# quadruple: {}\n", quadruple_text(*rec.quadruple));
  text += fmt::format("# scheme: {}\n", rec.scheme);
  text += fmt::format("# seed: {}\n", rec.seed.empty() ? "none" : rec.seed);
  text += "# outputs:";
  for (const std::string& f : rec.outputs) text += " " + f;
  text += "\n# replay: hvlab " + command + " --config <this file>\n";
  text += app.config_to_str(false, false);
  return text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deterministic hidden-variable EPRB lab", "hvlab"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  app.allow_config_extras(CLI::config_extras_mode::ignore);
  app.set_config("--config", "", "Key=value file mirroring the flags (command-line flags win)");

  Options o;
  app.add_option("--model", o.model, "local-coin | singlet | singlet+bias:q=<real> | sequential-singlet | quantum");
  CLI::Option* angles_opt = app.add_option("--angles", o.angles, "a,a',b,b' in radians");
  CLI::Option* theta_opt = app.add_option("--theta", o.theta, "Chain angle: a-b = b-a' = a'-b' = theta");
  angles_opt->excludes(theta_opt);
  CLI::Option* grid_opt = app.add_option("--grid", o.grid, "Midpoint grid with N cells per axis (default 1024)");
  CLI::Option* mc_opt = app.add_option("--mc", o.mc, "Monte Carlo with N samples");
  grid_opt->excludes(mc_opt);
  app.add_option("--seed", o.seed, "Seed for Monte Carlo and the game");
  app.add_option("--out", o.out, "Output file (default stdout)");
  app.add_option("--svg", o.svg, "SVG plot path (sweep)");
  app.add_option("--manifest", o.manifest, "Manifest path (default <out>.manifest)")->configurable(false);
  app.add_flag("--json", o.json, "Emit JSON instead of CSV");
  app.add_option("--theta-min", o.theta_min, "Sweep start");
  app.add_option("--theta-max", o.theta_max, "Sweep end");
  app.add_option("--steps", o.steps, "Sweep points (>= 2)");
  app.add_flag("--bounds", o.bounds, "Add the eight Hardy bounds to the sweep");
  app.add_option("--runs", o.runs, "Game runs");
  app.add_option("--log", o.log, "Per-run CSV log of the game");
  CLI::Option* q_opt = app.add_option("--q", o.q, "Weight of u < 1/2 in the biased distribution");
  app.add_option("--pair", o.pair, "Two relative angles theta1,theta2 (Bob at 0)");

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"stats", "Context statistics"},
      {"transition", "Transition-set measures and escape regions"},
      {"sweep", "Hardy bounds, P(sigma-) and bits along the chain"},
      {"comm", "Communication game"},
      {"signal", "Marginal shift and detailed balance"},
      {"moc", "Measurement-ordering contextuality demo"}};
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  o.has_grid = grid_opt->count() > 0;
  o.has_mc = mc_opt->count() > 0;
  o.has_q = q_opt->count() > 0;

  const std::string command = app.get_subcommands().front()->get_name();
  RunRecord rec;
  try {
    if (command == "stats") {
      cmd_stats(o, out, rec);
    } else if (command == "transition") {
      cmd_transition(o, out, rec);
    } else if (command == "sweep") {
      cmd_sweep(o, out, rec);
    } else if (command == "comm") {
      cmd_comm(o, out, rec);
    } else if (command == "signal") {
      cmd_signal(o, out, rec);
    } else {
      cmd_moc(o, out, rec);
    }
    std::string manifest = o.manifest;
    if (manifest.empty() && !o.out.empty()) manifest = o.out + ".manifest";
    if (!manifest.empty()) write_file(manifest, manifest_text(args, command, rec, app));
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvariantViolation& e) {
    err << "invariant violated: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace hvlab::cli
