#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "levy/evaluation.hpp"
#include "levy/model_selection.hpp"
#include "levy/process.hpp"

namespace levy::cli {

/// Bad flag values and malformed option strings; exit code 2.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::vector<double> parse_list(std::string_view text);

/// "regular:1..40", "regularized:1..40" or a single size "regular:10".
CollectionSpec parse_family(std::string_view text);
std::string format_family(const CollectionSpec& spec);

/// "a:c,c1", "b:c" or "c:c,c1,c2".
PenaltyForm parse_penalty(std::string_view text);

/// "lebesgue" or "inv-square".
ReferenceMeasure parse_measure(std::string_view text);

/// "gamma:alpha,beta", "vg:theta,sigma,nu" or "piecewise:c0,...,ck:r1,...,rk".
ProcessSpec parse_process(std::string_view text);
std::string format_process(const ProcessSpec& process);

}  // namespace levy::cli
