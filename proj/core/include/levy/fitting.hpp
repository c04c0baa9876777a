#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "levy/levy_sim.hpp"
#include "levy/projection.hpp"

namespace levy {

struct FitGrid {
    std::vector<double> points;

    /// Bin midpoints of the model.
    static FitGrid midpoints(const LinearModel& model);
};

template <class Params>
struct FitReport {
    std::string method;
    Params params{};
    double objective = 0.0;
    std::size_t n_points_used = 0;
    /// One entry per discarded grid point or data issue.
    std::vector<std::string> dropped;
    bool converged = true;
    std::size_t iterations = 0;
    std::vector<double> grid;
};

/// Log-linear least squares: y = log(x p(x)) regressed on x, slope -1/beta,
/// intercept log(alpha). p is the Levy density of the estimate (s times the
/// density of its reference measure). Points with p <= 0 are dropped. A
/// non-negative slope cannot come from a Gamma density: the raw OLS values
/// are returned (beta <= 0 or infinite) with converged = false.
FitReport<GammaParams> lse_gamma_log(const ProjectionEstimate& estimate, const FitGrid& grid);

/// Same regression on explicit (x > 0, p(x)) pairs.
FitReport<GammaParams> lse_gamma_log_points(const std::vector<double>& xs, const std::vector<double>& values);

/// Nonlinear least squares sum ((alpha/x) exp(-x/beta) - p(x))^2. alpha is
/// closed form given beta; beta comes from bounded Brent searches on the
/// profiled objective, re-centred until the relative objective change is
/// below 1e-10 or 200 passes.
FitReport<GammaParams> lse_gamma_direct(const ProjectionEstimate& estimate, const FitGrid& grid,
                                        const GammaParams& init);
FitReport<GammaParams> lse_gamma_direct_points(const std::vector<double>& xs, const std::vector<double>& values,
                                               const GammaParams& init);

double lse_gamma_direct_objective(const GammaParams& params, const std::vector<double>& xs,
                                  const std::vector<double>& values);

/// Sum over increments of log f_dt(x), f_dt the Gamma(alpha dt, beta) density.
double gamma_log_likelihood(const GammaParams& params, const IncrementSeries& increments);

/// Maximum likelihood on a Gamma skeleton via the profile equation
/// log(k) - digamma(k) = log(mean) - mean(log x), k = alpha dt, solved by
/// Newton steps kept inside the bracket (1/(2s), 1/s) with bisection fallback.
/// The objective reported is the negative log-likelihood.
FitReport<GammaParams> mle_gamma(const IncrementSeries& increments);

struct VGMoments {
    double mean = 0.0;
    double m2 = 0.0;
    double m3 = 0.0;
    double m4 = 0.0;
};

/// Mean and central moments 2-4 of a VG increment over dt:
///   mean = theta dt, m2 = (sigma^2 + nu theta^2) dt,
///   m3 = (3 sigma^2 theta nu + 2 theta^3 nu^2) dt,
///   m4 = (3 sigma^4 nu + 12 sigma^2 theta^2 nu^2 + 6 theta^4 nu^3) dt + 3 m2^2.
VGMoments vg_central_moments(const VGParams& params, double dt);

VGMoments sample_moments(const std::vector<double>& xs);

/// Method of moments from mean, m2 and m4 with 5 fixed-point passes.
/// Non-positive excess kurtosis clips nu to 1e-8 and sets converged = false.
FitReport<VGParams> mom_vg(const IncrementSeries& increments);
FitReport<VGParams> mom_vg_from_moments(const VGMoments& moments, double dt, std::size_t n);

/// Gamma tails fitted separately by lse_gamma_log (the left one reflected),
/// alpha pooled as the mean of both, then converted to (theta, sigma, nu).
struct VGTailFit {
    FitReport<VGParams> vg;
    FitReport<GammaParams> left;
    FitReport<GammaParams> right;
    GammaPair pair;
};

VGTailFit lse_vg_tails(const ProjectionEstimate& left, const ProjectionEstimate& right, const FitGrid& left_grid,
                       const FitGrid& right_grid);

}  // namespace levy
