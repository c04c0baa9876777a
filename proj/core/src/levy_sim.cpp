#include "levy/levy_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace levy {

namespace {

void require_horizon(double horizon) {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw std::invalid_argument("horizon must be positive and finite");
    }
}

void require_steps(std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("number of steps must be at least 1");
    }
}

}  // namespace

void GammaParams::validate() const {
    if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
        throw std::invalid_argument("Gamma parameters require alpha > 0 and beta > 0");
    }
}

void VGParams::validate() const {
    if (!std::isfinite(theta) || !(sigma > 0.0) || !(nu > 0.0) || !std::isfinite(sigma) ||
        !std::isfinite(nu)) {
        throw std::invalid_argument("VG parameters require sigma > 0 and nu > 0");
    }
}

std::vector<double> JumpSet::sizes() const {
    std::vector<double> out;
    out.reserve(jumps.size());
    for (const auto& j : jumps) {
        out.push_back(j.size);
    }
    return out;
}

JumpSet simulate_gamma_jumps(const GammaParams& params, double horizon, std::size_t n_terms,
                             RngStream rng) {
    params.validate();
    require_horizon(horizon);
    if (n_terms == 0) {
        throw std::invalid_argument("n_terms must be at least 1");
    }
    const double rate = params.alpha * horizon;
    JumpSet out;
    out.horizon = horizon;
    out.jumps.reserve(n_terms);
    double arrival = 0.0;
    for (std::size_t i = 0; i < n_terms; ++i) {
        arrival += rng.exponential();
        const double v = rng.exponential();
        const double u = rng.uniform();
        double size = params.beta * v * std::exp(-arrival / rate);
        if (size <= 0.0) {
            // deep in the tail of a long series exp() underflows
            size = std::numeric_limits<double>::denorm_min();
        }
        out.jumps.push_back({u * horizon, size});
    }
    return out;
}

double gamma_series_truncated_mass(const GammaParams& params, double horizon, std::size_t n_terms) {
    params.validate();
    require_horizon(horizon);
    // E[exp(-Gamma_i / c)] = (c / (c + 1))^i for Gamma_i ~ Gamma(i, 1)
    const double c = params.alpha * horizon;
    const double log_ratio = std::log(c) - std::log1p(c);
    return params.beta * (c + 1.0) * std::exp(log_ratio * static_cast<double>(n_terms + 1));
}

std::size_t gamma_series_terms_for(const GammaParams& params, double horizon, double min_size,
                                   double tol) {
    params.validate();
    require_horizon(horizon);
    if (!(min_size > 0.0) || !(tol > 0.0)) {
        throw std::invalid_argument("min_size and tol must be positive");
    }
    // Omitted jumps >= a after n terms: c * E1(z) <= c * exp(-z) / z with
    // z = (a / beta) exp(n / c). Pick z with c exp(-z) / z < tol.
    const double c = params.alpha * horizon;
    const double z = std::max(1.0, std::log(c / tol) + 1.0);
    const double n = c * std::log(z * params.beta / min_size);
    return static_cast<std::size_t>(std::max(1.0, std::ceil(n)));
}

IncrementSeries simulate_gamma_skeleton(const GammaParams& params, double horizon, std::size_t n,
                                        RngStream rng) {
    params.validate();
    require_horizon(horizon);
    require_steps(n);
    const double shape = params.alpha * horizon / static_cast<double>(n);
    IncrementSeries out;
    out.horizon = horizon;
    out.increments.resize(n);
    for (auto& x : out.increments) {
        x = params.beta * rng.gamma(shape);
    }
    return out;
}

GammaPair vg_to_gamma_pair(const VGParams& params) {
    params.validate();
    const double tn = params.theta * params.nu;
    const double root = std::sqrt(0.25 * tn * tn + 0.5 * params.sigma * params.sigma * params.nu);
    return {1.0 / params.nu, root + 0.5 * tn, root - 0.5 * tn};
}

VGParams gamma_pair_to_vg(const GammaPair& pair) {
    if (!(pair.alpha > 0.0) || !(pair.beta_plus > 0.0) || !(pair.beta_minus > 0.0)) {
        throw std::invalid_argument("Gamma pair requires alpha, beta+ and beta- positive");
    }
    const double nu = 1.0 / pair.alpha;
    VGParams out;
    out.nu = nu;
    out.theta = (pair.beta_plus - pair.beta_minus) / nu;
    out.sigma = std::sqrt(2.0 * pair.beta_plus * pair.beta_minus / nu);
    return out;
}

JumpSet simulate_vg_difference(const VGParams& params, double horizon, std::size_t n_terms,
                               RngStream rng) {
    const GammaPair pair = vg_to_gamma_pair(params);
    JumpSet up = simulate_gamma_jumps({pair.alpha, pair.beta_plus}, horizon, n_terms, rng.child(0));
    JumpSet down = simulate_gamma_jumps({pair.alpha, pair.beta_minus}, horizon, n_terms, rng.child(1));
    up.jumps.reserve(up.jumps.size() + down.jumps.size());
    for (const auto& j : down.jumps) {
        up.jumps.push_back({j.time, -j.size});
    }
    return up;
}

IncrementSeries simulate_vg_timechange(const VGParams& params, double horizon, std::size_t n,
                                       RngStream rng) {
    params.validate();
    require_horizon(horizon);
    require_steps(n);
    const double dt = horizon / static_cast<double>(n);
    const double shape = dt / params.nu;
    IncrementSeries out;
    out.horizon = horizon;
    out.increments.resize(n);
    for (auto& x : out.increments) {
        const double du = params.nu * rng.gamma(shape);
        const double z = rng.normal();
        x = params.theta * du + params.sigma * std::sqrt(du) * z;
    }
    return out;
}

IncrementSeries jumps_to_increments(const JumpSet& jumps, std::size_t n) {
    require_steps(n);
    require_horizon(jumps.horizon);
    const double horizon = jumps.horizon;
    const auto steps = static_cast<double>(n);
    IncrementSeries out;
    out.horizon = horizon;
    out.increments.assign(n, 0.0);
    auto edge = [&](std::size_t k) { return horizon * static_cast<double>(k) / steps; };
    for (const auto& j : jumps.jumps) {
        // 1-based interval index k with t in (t_{k-1}, t_k]
        double guess = std::ceil(j.time / horizon * steps);
        std::size_t k = guess < 1.0 ? 1 : std::min(n, static_cast<std::size_t>(guess));
        while (k > 1 && j.time <= edge(k - 1)) {
            --k;
        }
        while (k < n && j.time > edge(k)) {
            ++k;
        }
        out.increments[k - 1] += j.size;
    }
    return out;
}

}  // namespace levy
