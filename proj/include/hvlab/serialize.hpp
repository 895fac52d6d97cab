#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "hvlab/inequalities.hpp"
#include "hvlab/ordering.hpp"
#include "hvlab/protocols.hpp"
#include "hvlab/transition.hpp"

namespace hvlab {

// CSV dialect: comma separated, '.' decimal point, header row, LF line
// endings, reals with 12 significant digits.

std::string format_real(double v);

/// Seed column text: empty for grid schemes.
std::string seed_text(const Scheme& scheme);

void write_stats_csv(std::ostream& os, const AngleQuadruple& q, const JointStats& stats, const std::string& scheme,
                     const std::string& seed);

/// One row per named measure: name,value,std_error,scheme,seed.
void write_transition_csv(std::ostream& os, const TransitionReport& report);

void write_hardy_header(std::ostream& os);
void write_hardy_row(std::ostream& os, const std::string& label, const HardyBounds& h);

void write_run_log_header(std::ostream& os, std::size_t dimension);
void write_run_log_row(std::ostream& os, const CommRunLog& r);

/// name,value,std_error rows.
void write_comm_summary_csv(std::ostream& os, const CommSummary& s);

void write_moc_header(std::ostream& os);
void write_moc_row(std::ostream& os, const MocReport& r, const Scheme& scheme);

nlohmann::json to_json(const AngleQuadruple& q);
nlohmann::json to_json(const MeasureEstimate& m);
nlohmann::json to_json(const JointStats& s);
nlohmann::json to_json(const TransitionReport& r);
nlohmann::json to_json(const CommSummary& s);
nlohmann::json to_json(const MocReport& r);

}  // namespace hvlab
