#include "hvlab/serialize.hpp"

#include <fmt/format.h>

namespace hvlab {

std::string format_real(double v) {
  // adding 0.0 turns -0 into +0
  return fmt::format("{:.12g}", v + 0.0);
}

std::string seed_text(const Scheme& scheme) { return scheme.is_grid() ? std::string() : fmt::format("{}", scheme.seed()); }

void write_stats_csv(std::ostream& os, const AngleQuadruple& q, const JointStats& stats, const std::string& scheme,
                     const std::string& seed) {
  os << "context,alice,bob,theta,p_plus,p_minus,std_error,scheme,seed\n";
  for (int i = 0; i < kContexts; ++i) {
    const ContextSettings s = context_settings(q, i);
    os << (i + 1) << ',' << format_real(s.alice.radians()) << ',' << format_real(s.bob.radians()) << ','
       << format_real(theta_between(s.alice, s.bob)) << ',' << format_real(stats.p_plus[i]) << ','
       << format_real(stats.p_minus[i]) << ',' << format_real(stats.std_error[i]) << ',' << scheme << ',' << seed
       << '\n';
  }
}

void write_transition_csv(std::ostream& os, const TransitionReport& r) {
  const std::string scheme = r.scheme.describe();
  const std::string seed = seed_text(r.scheme);
  os << "name,value,std_error,scheme,seed\n";
  auto row = [&](const std::string& name, double value, double err) {
    os << name << ',' << format_real(value) << ',' << format_real(err) << ',' << scheme << ',' << seed << '\n';
  };
  for (TransitionSetId id : kTransitionSets) {
    const int i = index_of(id);
    row(fmt::format("set:{}", set_name(id)), r.set_measures[i].value, r.set_measures[i].std_error);
    row(fmt::format("partition:{}(+-)", set_name(id)), r.partitions[i].plus_minus.value,
        r.partitions[i].plus_minus.std_error);
    row(fmt::format("partition:{}(-+)", set_name(id)), r.partitions[i].minus_plus.value,
        r.partitions[i].minus_plus.std_error);
  }
  for (int k = 1; k <= 8; ++k) {
    row(fmt::format("region:T{}", k), r.escape_region(k).value, r.escape_region(k).std_error);
  }
  for (int k = 1; k <= 6; ++k) {
    const MeasureEstimate& m = r.mask_measures[pair_region_mask(k)];
    row(fmt::format("region:E{}", k), m.value, m.std_error);
  }
  row("region:F", r.mask_measures[0xF].value, r.mask_measures[0xF].std_error);
  row("region:O", r.mask_measures[0].value, r.mask_measures[0].std_error);
  row("sigma_minus", r.sigma_minus.value, r.sigma_minus.std_error);
  row("sigma_minus_by_sign", r.sigma_minus_by_sign.value, r.sigma_minus_by_sign.std_error);
  const double dark = r.sum_escape_regions();
  row("sum_T_regions", dark, r.sigma_minus.std_error);
  row("identity:sum_T_regions-sigma_minus", dark - r.sigma_minus.value, 0.0);
}

void write_hardy_header(std::ostream& os) {
  os << "config,alpha1,alpha2,alpha3,alpha4,beta1,beta2,beta3,beta4,unified,bell_lhs,violated\n";
}

void write_hardy_row(std::ostream& os, const std::string& label, const HardyBounds& h) {
  os << label;
  for (double a : h.alpha) os << ',' << format_real(a);
  for (double b : h.beta) os << ',' << format_real(b);
  os << ',' << format_real(h.unified) << ',' << format_real(h.bell_lhs) << ',' << (h.violated() ? 1 : 0) << '\n';
}

void write_run_log_header(std::ostream& os, std::size_t dimension) {
  os << "run";
  for (std::size_t k = 0; k < dimension; ++k) os << ",lambda" << k;
  os << ",alice_setting,bob_setting,region,bits,A,B\n";
}

void write_run_log_row(std::ostream& os, const CommRunLog& r) {
  os << r.run;
  for (double x : r.lambda.coords()) os << ',' << format_real(x);
  os << ',' << (r.alice_primed ? "a'" : "a") << ',' << (r.bob_primed ? "b'" : "b") << ','
     << region_label(r.membership_mask) << ',' << r.bits << ',' << value(r.alice) << ',' << value(r.bob) << '\n';
}

void write_comm_summary_csv(std::ostream& os, const CommSummary& s) {
  os << "name,value,std_error\n";
  os << "n_runs," << s.n_runs << ",0\n";
  os << "seed," << s.seed << ",0\n";
  os << "average_bits," << format_real(s.average_bits.value) << ',' << format_real(s.average_bits.std_error) << '\n';
  os << "sigma_minus," << format_real(s.sigma_minus_bound.value) << ','
     << format_real(s.sigma_minus_bound.std_error) << '\n';
  for (int c = 0; c < kContexts; ++c) {
    os << "p_minus[" << (c + 1) << "]," << format_real(s.stats.p_minus[c]) << ','
       << format_real(s.stats.std_error[c]) << '\n';
  }
  for (int c = 0; c < kContexts; ++c) os << "runs[" << (c + 1) << "]," << s.context_runs[c] << ",0\n";
}

void write_moc_header(std::ostream& os) {
  os << "wing,own,other,moc_measure,std_error,induced_sigma_minus,induced_bell_lhs,quantum_required,"
        "impossibility,scheme,seed\n";
}

void write_moc_row(std::ostream& os, const MocReport& r, const Scheme& scheme) {
  os << wing_name(r.witness.wing) << ',' << format_real(r.witness.own.radians()) << ','
     << format_real(r.witness.other.radians()) << ',' << format_real(r.witness.moc_measure.value) << ','
     << format_real(r.witness.moc_measure.std_error) << ',' << format_real(r.induced_sigma_minus.value) << ','
     << format_real(r.induced_bell_lhs) << ',' << format_real(r.quantum_required) << ','
     << (r.impossibility_shown() ? 1 : 0) << ',' << scheme.describe() << ',' << seed_text(scheme) << '\n';
}

nlohmann::json to_json(const AngleQuadruple& q) {
  return {{"a", q.a.radians()}, {"a_prime", q.a_prime.radians()}, {"b", q.b.radians()}, {"b_prime", q.b_prime.radians()}};
}

nlohmann::json to_json(const MeasureEstimate& m) {
  nlohmann::json j = {{"value", m.value}, {"std_error", m.std_error}, {"scheme", m.scheme.describe()}};
  if (!m.scheme.is_grid()) j["seed"] = m.scheme.seed();
  return j;
}

nlohmann::json to_json(const JointStats& s) {
  return {{"p_plus", s.p_plus}, {"p_minus", s.p_minus}, {"std_error", s.std_error}};
}

nlohmann::json to_json(const TransitionReport& r) {
  nlohmann::json sets = nlohmann::json::array();
  for (TransitionSetId id : kTransitionSets) {
    const int i = index_of(id);
    sets.push_back({{"name", set_name(id)},
                    {"measure", to_json(r.set_measures[i])},
                    {"plus_minus", to_json(r.partitions[i].plus_minus)},
                    {"minus_plus", to_json(r.partitions[i].minus_plus)}});
  }
  nlohmann::json regions = nlohmann::json::object();
  for (int m = 0; m < kMasks; ++m) regions[region_label(static_cast<std::uint8_t>(m))] = to_json(r.mask_measures[m]);
  nlohmann::json j = {{"model", r.model_name},
                      {"distribution", r.distribution_label},
                      {"quadruple", to_json(r.quadruple)},
                      {"scheme", r.scheme.describe()},
                      {"transition_sets", sets},
                      {"regions", regions},
                      {"sigma_minus", to_json(r.sigma_minus)},
                      {"sigma_minus_by_sign", to_json(r.sigma_minus_by_sign)},
                      {"sum_T_regions", r.sum_escape_regions()}};
  if (!r.scheme.is_grid()) j["seed"] = r.scheme.seed();
  return j;
}

nlohmann::json to_json(const CommSummary& s) {
  return {{"n_runs", s.n_runs},
          {"seed", s.seed},
          {"average_bits", {{"value", s.average_bits.value}, {"std_error", s.average_bits.std_error}}},
          {"sigma_minus", {{"value", s.sigma_minus_bound.value}, {"std_error", s.sigma_minus_bound.std_error}}},
          {"stats", to_json(s.stats)},
          {"context_runs", s.context_runs}};
}

nlohmann::json to_json(const MocReport& r) {
  auto candidate = [](const MocCandidate& c) {
    return nlohmann::json{{"wing", wing_name(c.wing)},
                          {"own", c.own.radians()},
                          {"other", c.other.radians()},
                          {"moc_measure", to_json(c.moc_measure)}};
  };
  nlohmann::json all = nlohmann::json::array();
  for (const MocCandidate& c : r.candidates) all.push_back(candidate(c));
  return {{"quadruple", to_json(r.quadruple)},
          {"witness", candidate(r.witness)},
          {"candidates", all},
          {"induced_sigma_minus", to_json(r.induced_sigma_minus)},
          {"induced_bell_lhs", r.induced_bell_lhs},
          {"induced_unified", r.induced_unified},
          {"quantum_required", r.quantum_required},
          {"impossibility_shown", r.impossibility_shown()}};
}

}  // namespace hvlab
