#pragma once

#include <json.hpp>
#include <string>

#include "martnorm/entropy.hpp"
#include "martnorm/gls.hpp"
#include "martnorm/moment_bounds.hpp"
#include "martnorm/verify.hpp"

namespace martnorm {

/// Shortest round-trip decimal form; infinities print as "inf"/"-inf".
std::string format_double(double x);

// Fixed-column CSV emitters, one header row each.
std::string bound_profile_csv(const BoundProfile& profile);        // p,nu,rho,beta
std::string tail_curve_csv(const TailCurve& curve);                // t,bound,provenance
std::string entropy_csv(const EntropyProfile& profile);            // eps,entropy
std::string moment_rows_csv(const std::vector<MomentRow>& rows);   // p,empirical,stderr,...
std::string tail_rows_csv(const std::vector<TailRow>& rows);       // t,frequency,wilson_lo,...
/// Moment and tail rows merged into one long table for plotting.
std::string report_csv(const EmpiricalReport& report);             // section,x,empirical,...

// JSON mirrors of the CSV content, plus provenance metadata (the formula
// behind each bound column) and the envelope/geometry constants in use.
// Non-finite numbers are encoded as the strings "inf"/"-inf"/"nan".
nlohmann::ordered_json bound_profile_json(const BoundProfile& profile);
nlohmann::ordered_json tail_curve_json(const TailCurve& curve);
nlohmann::ordered_json entropy_json(const EntropyProfile& profile);
nlohmann::ordered_json report_json(const EmpiricalReport& report);

/// Parses a JSON report back into the in-memory form (round-trip checkable).
EmpiricalReport report_from_json(const nlohmann::ordered_json& j);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace martnorm
