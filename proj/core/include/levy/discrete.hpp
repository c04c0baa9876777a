#pragma once

#include <functional>
#include <string>

#include "levy/levy_sim.hpp"
#include "levy/model_selection.hpp"
#include "levy/projection.hpp"

namespace levy {

/// Integrand f for Poisson integrals sum f(jump) and their increment-based
/// approximations. f(0) is always 0.
struct IntegrandSpec {
    /// Small-time convergence of the increment approximation is known for f
    /// vanishing near the origin or f(x) = o(x^2) at 0. General is neither.
    enum class Condition { AwayFromOrigin, SmallAtOrigin, General };

    std::function<double(double)> fn;
    Condition condition = Condition::General;
    std::string label;
    /// Interval outside which f vanishes; used for quadrature targets.
    double support_lo = 0.0;
    double support_hi = 0.0;

    double operator()(double x) const { return x == 0.0 ? 0.0 : fn(x); }
    bool admissible() const { return condition != Condition::General; }

    static IntegrandSpec zero();
    /// Indicator of the interval from lo to hi with the chosen closedness.
    static IntegrandSpec indicator(double lo, double hi, bool lo_closed = true, bool hi_closed = true);
    /// f(x) = x on (0, inf), 0 elsewhere.
    static IntegrandSpec positive_identity();
    static IntegrandSpec custom(std::function<double(double)> fn, Condition condition, std::string label,
                                double support_lo, double support_hi);
};

/// I(f) = sum over jumps of f(size).
double poisson_integral(const JumpSet& jumps, const IntegrandSpec& f);

/// I_n(f) = sum over increments of f(increment).
double poisson_integral_approx(const IncrementSeries& increments, const IntegrandSpec& f);

/// Increments as pseudo-jump sizes. Zero increments carry no jump and are
/// skipped; otherwise the order of the series is kept.
std::vector<double> pseudo_jumps(const IncrementSeries& increments);

/// False for the regularized basis: its first function is O(x) at 0.
bool within_proven_scope(const LinearModel& model);

/// beta-hat^n_i = (1/T) sum_k phi_i(increment_k).
ProjectionEstimate approx_project(const IncrementSeries& increments, const LinearModel& model);

/// c pen^n(m) with pen^n(m) = (1/T^2) sum_k sum_i phi_i(increment_k)^2.
double approx_penalty(const IncrementSeries& increments, const LinearModel& model, double c);

/// Selection with -||s^n_m||^2 + c pen^n(m) over the admissible models.
SelectionResult approx_select(const IncrementSeries& increments, const ModelCollection& collection, double c);

}  // namespace levy
