#pragma once

#include <cstddef>
#include <vector>

#include "levy/rng.hpp"

namespace levy {

/// Gamma Levy process: Levy density (alpha / x) exp(-x / beta) on x > 0.
/// alpha is the jump activity per unit time, beta the scale of X.
struct GammaParams {
    double alpha = 1.0;
    double beta = 1.0;

    void validate() const;
};

/// Variance Gamma process X(t) = theta U(t) + sigma W(U(t)) with a Gamma
/// clock U of unit mean rate and variance rate nu.
struct VGParams {
    double theta = 0.0;
    double sigma = 1.0;
    double nu = 1.0;

    void validate() const;
};

/// Difference-of-Gammas form of a VG process: X = X+ - X-, both Gamma
/// processes with activity alpha and scales beta_plus / beta_minus.
struct GammaPair {
    double alpha = 0.0;
    double beta_plus = 0.0;
    double beta_minus = 0.0;
};

struct Jump {
    double time = 0.0;
    double size = 0.0;
};

/// Marked point set of jumps on [0, horizon]. Order carries no meaning.
struct JumpSet {
    double horizon = 0.0;
    std::vector<Jump> jumps;

    std::vector<double> sizes() const;
};

/// Equally spaced increments X(t_k) - X(t_{k-1}), t_k = k * horizon / n.
struct IncrementSeries {
    double horizon = 0.0;
    std::vector<double> increments;

    std::size_t steps() const { return increments.size(); }
    double step() const { return horizon / static_cast<double>(increments.size()); }
    double time(std::size_t k) const {
        return horizon * static_cast<double>(k) / static_cast<double>(increments.size());
    }
};

/// Series representation truncated to n_terms:
///   J_i = beta V_i exp(-Gamma_i / (alpha T)),  time U_i ~ Uniform[0, T],
/// with Gamma_i unit-rate Poisson arrivals and V_i standard exponentials.
/// Draw order per term is (arrival gap, V_i, U_i).
JumpSet simulate_gamma_jumps(const GammaParams& params, double horizon, std::size_t n_terms,
                             RngStream rng);

/// Sum over i > n_terms of E[J_i]: the jump mass lost by truncation.
double gamma_series_truncated_mass(const GammaParams& params, double horizon, std::size_t n_terms);

/// Number of series terms after which the expected count of omitted jumps
/// of size >= min_size is below tol.
std::size_t gamma_series_terms_for(const GammaParams& params, double horizon, double min_size,
                                   double tol = 1e-6);

/// i.i.d. Gamma(shape = alpha T / n, scale = beta) increments.
IncrementSeries simulate_gamma_skeleton(const GammaParams& params, double horizon, std::size_t n,
                                        RngStream rng);

GammaPair vg_to_gamma_pair(const VGParams& params);

/// Inverse of vg_to_gamma_pair: nu = 1/alpha, theta = (b+ - b-)/nu,
/// sigma^2 = 2 b+ b- / nu.
VGParams gamma_pair_to_vg(const GammaPair& pair);

/// Positive jumps of Gamma(alpha, beta+) from rng.child(0) followed by the
/// negated jumps of Gamma(alpha, beta-) from rng.child(1).
JumpSet simulate_vg_difference(const VGParams& params, double horizon, std::size_t n_terms,
                               RngStream rng);

/// Discrete skeleton through the Gamma time change:
///   dU_k ~ Gamma((T/n)/nu, nu),  increment = theta dU_k + sigma sqrt(dU_k) Z_k.
IncrementSeries simulate_vg_timechange(const VGParams& params, double horizon, std::size_t n,
                                       RngStream rng);

/// Bins jumps into the intervals (t_{k-1}, t_k]; a jump at time 0 goes to
/// the first interval.
IncrementSeries jumps_to_increments(const JumpSet& jumps, std::size_t n);

}  // namespace levy
