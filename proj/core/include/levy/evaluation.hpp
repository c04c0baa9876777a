#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "levy/discrete.hpp"
#include "levy/model_selection.hpp"
#include "levy/process.hpp"

namespace levy {

struct CollectionSpec {
    enum class Kind { Regular, Regularized };

    Kind kind = Kind::Regular;
    std::size_t m_min = 1;
    std::size_t m_max = 40;

    /// The regularized family lives on [0, window.hi] under the inverse-square
    /// measure whatever the configured measure.
    ModelCollection build(const Window& window, const ReferenceMeasure& measure) const;
};

struct ExperimentConfig {
    ProcessSpec process = GammaParams{1.0, 1.0};
    Window window{0.1, 1.0};
    ReferenceMeasure measure = ReferenceMeasure::lebesgue();
    CollectionSpec collection;
    PenaltyForm penalty = PenaltyForm::b(2.0);
    double horizon = 365.0;
    std::size_t replications = 1000;
    /// Series terms per Gamma component; 0 picks enough terms that the
    /// expected number of missed jumps inside the window is below 1e-6.
    std::size_t n_terms = 0;
    std::uint64_t master_seed = 1;
    /// Worker threads; 0 uses the hardware concurrency.
    unsigned threads = 0;
    /// false skips the per-model rows and keeps only the selected estimator.
    bool per_model = true;

    void validate() const;
};

std::size_t resolved_terms(const ExperimentConfig& config);

struct RiskRow {
    std::size_t index = 0;
    std::size_t dim = 0;
    double sup_constant = 0.0;
    /// ||s - s_perp||^2
    double bias_sq = 0.0;
    /// (1/T) sum_i int phi_i^2 s d eta
    double var_analytic = 0.0;
    /// MC mean and SE of chi^2 = ||s_perp - s_hat||^2
    double var_mc = 0.0;
    double var_mc_se = 0.0;
    /// MC mean and SE of ||s - s_hat||^2 (quadrature per replication)
    double risk_mc = 0.0;
    double risk_se = 0.0;
    double vhat_mean = 0.0;
    double vhat_se = 0.0;
    double vhat_target = 0.0;
    std::vector<double> coef_target;
    std::vector<double> coef_mean;
    std::vector<double> coef_se;
};

struct RiskTable {
    std::vector<RiskRow> models;
    /// Selected estimator: risk_mc / risk_se and var_mc over replications;
    /// bias_sq is the MC mean bias of the chosen model.
    RiskRow ppe;
    /// chosen_counts[i]: replications selecting collection model i.
    std::vector<std::size_t> chosen_counts;
    std::size_t replications_ok = 0;
    std::size_t replications_failed = 0;
    std::vector<std::string> failures;
    double max_pythagorean_residual = 0.0;
    std::size_t pythagorean_violations = 0;
    std::size_t n_terms = 0;
    double truncated_mass = 0.0;

    double min_model_risk() const;
};

inline constexpr double kPythagoreanTolerance = 1e-8;

RiskTable mc_risk(const ExperimentConfig& config);

struct LogLogFit {
    double slope = 0.0;
    double slope_se = 0.0;
    double intercept = 0.0;
};

/// OLS of log(y) on log(x).
LogLogFit fit_log_log(const std::vector<double>& xs, const std::vector<double>& ys);

struct RatePoint {
    double horizon = 0.0;
    double risk_mc = 0.0;
    double risk_se = 0.0;
    std::size_t m_max = 0;
};

struct RateReport {
    std::vector<RatePoint> points;
    LogLogFit fit;
};

/// PPE risk at each T with the regular family m = 1..floor(T (b - a)).
RateReport rate_experiment(const ExperimentConfig& config, const std::vector<double>& horizons);

struct SweepRow {
    std::size_t n = 0;
    double mean = 0.0;
    double mean_se = 0.0;
    double target_mean = 0.0;
    double variance = 0.0;
    double target_variance = 0.0;

    double bias() const { return mean - target_mean; }
};

/// MC mean and variance of I_n(f) from exact skeletons, against T int f dnu
/// and T int f^2 dnu.
std::vector<SweepRow> approx_bias_sweep(const ProcessSpec& process, const IntegrandSpec& f, double horizon,
                                        const std::vector<std::size_t>& n_grid, std::size_t replications,
                                        std::uint64_t master_seed, unsigned threads = 0);

struct AlphaRow {
    double x1 = 0.0;
    double mean = 0.0;
    double mean_se = 0.0;
    /// E[alpha-hat] = alpha beta (1 - exp(-x1/beta)) / x1
    double mean_exact = 0.0;
    double variance = 0.0;
    /// alpha / (2T), the small-x1 limit
    double variance_limit = 0.0;
    /// alpha / (T x1^2) int_0^x1 x exp(-x/beta) dx
    double variance_exact = 0.0;
};

/// alpha-hat = (1/(T x1)) sum of jumps below x1, the regularized first-bin
/// coefficient over sqrt(x1). n_terms = 0 truncates the series where the
/// expected lost mass is below 1e-9 alpha T min(x1).
std::vector<AlphaRow> regularized_alpha_check(const GammaParams& params, double horizon,
                                              const std::vector<double>& x1_grid, std::size_t replications,
                                              std::uint64_t master_seed, std::size_t n_terms = 0,
                                              unsigned threads = 0);

/// Series terms such that the expected mass lost to truncation is below tol.
std::size_t gamma_series_terms_for_mass(const GammaParams& params, double horizon, double tol);

}  // namespace levy
