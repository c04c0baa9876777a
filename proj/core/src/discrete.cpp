#include "levy/discrete.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace levy {

IntegrandSpec IntegrandSpec::zero() {
    return {[](double) { return 0.0; }, Condition::AwayFromOrigin, "zero", 0.0, 0.0};
}

IntegrandSpec IntegrandSpec::indicator(double lo, double hi, bool lo_closed, bool hi_closed) {
    if (!(hi > lo)) {
        throw std::invalid_argument("indicator needs lo < hi");
    }
    const bool away = lo > 0.0 || hi < 0.0 || (lo == 0.0 && !lo_closed) || (hi == 0.0 && !hi_closed);
    if (!away) {
        throw std::invalid_argument("indicator integrands must vanish in a neighbourhood of 0");
    }
    std::ostringstream label;
    label << (lo_closed ? "[" : "(") << lo << "," << hi << (hi_closed ? "]" : ")");
    // an indicator with 0 as an open endpoint is still not bounded away from 0
    const Condition condition =
        (lo > 0.0 || hi < 0.0) ? Condition::AwayFromOrigin : Condition::General;
    return {[=](double x) {
                const bool above = lo_closed ? x >= lo : x > lo;
                const bool below = hi_closed ? x <= hi : x < hi;
                return above && below ? 1.0 : 0.0;
            },
            condition, "indicator" + label.str(), lo, hi};
}

IntegrandSpec IntegrandSpec::positive_identity() {
    return {[](double x) { return x > 0.0 ? x : 0.0; }, Condition::General, "identity+", 0.0,
            std::numeric_limits<double>::infinity()};
}

IntegrandSpec IntegrandSpec::custom(std::function<double(double)> fn, Condition condition, std::string label,
                                    double support_lo, double support_hi) {
    if (!fn) {
        throw std::invalid_argument("integrand needs a callable");
    }
    if (!(support_hi >= support_lo)) {
        throw std::invalid_argument("integrand support needs lo <= hi");
    }
    return {std::move(fn), condition, std::move(label), support_lo, support_hi};
}

double poisson_integral(const JumpSet& jumps, const IntegrandSpec& f) {
    double acc = 0.0;
    for (const auto& j : jumps.jumps) {
        acc += f(j.size);
    }
    return acc;
}

double poisson_integral_approx(const IncrementSeries& increments, const IntegrandSpec& f) {
    double acc = 0.0;
    for (double x : increments.increments) {
        acc += f(x);
    }
    return acc;
}

std::vector<double> pseudo_jumps(const IncrementSeries& increments) {
    std::vector<double> out;
    out.reserve(increments.increments.size());
    for (double x : increments.increments) {
        if (x != 0.0) {
            out.push_back(x);
        }
    }
    return out;
}

bool within_proven_scope(const LinearModel& model) { return !model.linear_first_bin(); }

ProjectionEstimate approx_project(const IncrementSeries& increments, const LinearModel& model) {
    const std::vector<double> sizes = pseudo_jumps(increments);
    return project(sizes, increments.horizon, model);
}

double approx_penalty(const IncrementSeries& increments, const LinearModel& model, double c) {
    const std::vector<double> sizes = pseudo_jumps(increments);
    return c * vhat(sizes, increments.horizon, model) / increments.horizon;
}

SelectionResult approx_select(const IncrementSeries& increments, const ModelCollection& collection, double c) {
    const std::vector<double> sizes = pseudo_jumps(increments);
    SelectionResult out = select(sizes, increments.horizon, collection, PenaltyForm::b(c));
    for (const auto& model : collection) {
        if (!within_proven_scope(model)) {
            out.outside_proven_scope = true;
        }
    }
    return out;
}

}  // namespace levy
