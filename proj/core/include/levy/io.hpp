#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "levy/evaluation.hpp"
#include "levy/levy_sim.hpp"
#include "levy/model_selection.hpp"
#include "levy/projection.hpp"

namespace levy::io {

/// Shortest decimal that parses back to the same double ('.' separator,
/// independent of the locale). Non-finite values print as nan / inf / -inf.
std::string format_double(double x);
double parse_double(std::string_view text);

void write_jumps_csv(std::ostream& out, const JumpSet& jumps);
/// Reads `time,size`; the horizon is not stored in the file.
JumpSet read_jumps_csv(std::istream& in, double horizon);

void write_increments_csv(std::ostream& out, const IncrementSeries& series);
/// Reads `k,t,increment`; the horizon is the last t.
IncrementSeries read_increments_csv(std::istream& in);

void write_estimate_csv(std::ostream& out, const ProjectionEstimate& estimate);

struct EstimateRow {
    double x_left = 0.0;
    double x_right = 0.0;
    double coeff = 0.0;
    double value_at_mid = 0.0;
};
std::vector<EstimateRow> read_estimate_csv(std::istream& in);

/// `m,d_m,D_m,contrast,penalty,score,chosen`; m is the number of bins.
void write_selection_csv(std::ostream& out, const SelectionResult& result, const ModelCollection& collection);

/// `m,bias_sq,var_analytic,var_mc,risk_mc,risk_se`, one row per model and a
/// final row with m = ppe.
void write_risk_csv(std::ostream& out, const RiskTable& table);

void write_rate_csv(std::ostream& out, const RateReport& report);

}  // namespace levy::io
