#pragma once

#include <string>
#include <variant>
#include <vector>

#include "levy/levy_sim.hpp"
#include "levy/projection.hpp"

namespace levy {

/// Compound Poisson process whose Levy density is constant on each bin
/// [cuts[i], cuts[i+1]). Used as a truth that histogram models can represent.
struct PiecewiseConstantLevy {
    std::vector<double> cuts;
    std::vector<double> rates;

    void validate() const;
};

using ProcessSpec = std::variant<GammaParams, VGParams, PiecewiseConstantLevy>;

void validate(const ProcessSpec& process);
std::string describe(const ProcessSpec& process);

/// Levy density p(x) (with respect to dx).
double levy_density(const ProcessSpec& process, double x);

/// F with F' = p on each side of the origin, so nu([a, b)) = F(b) - F(a)
/// for 0 not in [a, b].
double levy_antiderivative(const ProcessSpec& process, double x);

/// s = d nu / d eta = p / w, with the closed-form antiderivative attached.
DensitySpec truth_density(const ProcessSpec& process, const ReferenceMeasure& measure);

/// Jumps on [0, T]. Gamma and VG use the truncated series with n_terms per
/// Gamma component; the piecewise process is simulated exactly and ignores
/// n_terms.
JumpSet simulate_jumps(const ProcessSpec& process, double horizon, std::size_t n_terms, RngStream rng);

/// Exact discrete skeleton with n steps. The piecewise process is binned
/// from an exact jump set.
IncrementSeries simulate_increments(const ProcessSpec& process, double horizon, std::size_t n,
                                    RngStream rng);

}  // namespace levy
