#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "levy/discrete.hpp"
#include "levy/errors.hpp"
#include "levy/fitting.hpp"
#include "levy/model_selection.hpp"
#include "levy/rng.hpp"
#include "oracles.hpp"

using namespace levy;

namespace {

double gamma_levy(double alpha, double beta, double x) { return alpha / x * std::exp(-x / beta); }

double median(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    return n % 2 == 1 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

// Regular Lebesgue histogram whose bin values equal p at the midpoints.
ProjectionEstimate histogram_of(const Window& window, std::size_t bins, const std::function<double(double)>& p) {
    LinearModel model = build_model(window, ReferenceMeasure::lebesgue(), BasisSpec::regular(bins));
    const auto mids = FitGrid::midpoints(model).points;
    std::vector<double> coef;
    for (std::size_t i = 0; i < bins; ++i) {
        coef.push_back(p(mids[i]) / model.bin_scale(i));
    }
    return {model, coef, 1.0};
}

// Exhaustive Gamma log-likelihood search on a (k, beta) grid. Uses only the
// sufficient statistics, independent of the library's likelihood code.
struct GridBest {
    double k = 0.0;
    double beta = 0.0;
    double loglik = -std::numeric_limits<double>::infinity();
};

GridBest grid_search(const std::vector<double>& xs, double k_lo, double k_hi, double b_lo, double b_hi, int n) {
    double sum = 0.0;
    double sum_log = 0.0;
    for (double x : xs) {
        sum += x;
        sum_log += std::log(x);
    }
    const double count = static_cast<double>(xs.size());
    GridBest best;
    for (int i = 0; i <= n; ++i) {
        const double k = k_lo + (k_hi - k_lo) * i / n;
        for (int j = 0; j <= n; ++j) {
            const double b = b_lo + (b_hi - b_lo) * j / n;
            const double ll = (k - 1.0) * sum_log - sum / b - count * (std::lgamma(k) + k * std::log(b));
            if (ll > best.loglik) {
                best = {k, b, ll};
            }
        }
    }
    return best;
}

}  // namespace

TEST(LseGammaLog, NoiselessRecovery) {
    for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{0.5, 2.0}, std::pair{3.0, 0.2}}) {
        std::vector<double> xs{0.1, 0.35, 0.6, 1.1, 2.0};
        std::vector<double> ps;
        for (double x : xs) {
            ps.push_back(gamma_levy(a, b, x));
        }
        const auto r = lse_gamma_log_points(xs, ps);
        EXPECT_NEAR(r.params.alpha, a, 1e-10 * a);
        EXPECT_NEAR(r.params.beta, b, 1e-10 * b);
        EXPECT_TRUE(r.converged);
        EXPECT_LT(r.objective, 1e-20);
    }
}

TEST(LseGammaLog, TwoPointExample) {
    const auto r = lse_gamma_log_points({1.0, 2.0}, {std::exp(-1.0), std::exp(-2.0) / 2.0});
    EXPECT_NEAR(r.params.alpha, 1.0, 1e-14);
    EXPECT_NEAR(r.params.beta, 1.0, 1e-14);
    EXPECT_EQ(r.n_points_used, 2u);
}

TEST(LseGammaLog, FromHistogramEstimate) {
    const auto est = histogram_of({0.1, 1.0}, 9, [](double x) { return gamma_levy(2.0, 0.5, x); });
    const auto r = lse_gamma_log(est, FitGrid::midpoints(est.model));
    EXPECT_NEAR(r.params.alpha, 2.0, 1e-10);
    EXPECT_NEAR(r.params.beta, 0.5, 1e-10);
    EXPECT_EQ(r.grid.size(), 9u);
}

TEST(LseGammaLog, DropsNonPositiveAndReports) {
    const auto r = lse_gamma_log_points({0.2, 0.4, 0.6, 0.8}, {gamma_levy(1, 1, 0.2), 0.0, gamma_levy(1, 1, 0.6), -1.0});
    EXPECT_EQ(r.n_points_used, 2u);
    ASSERT_EQ(r.dropped.size(), 2u);
    EXPECT_NE(r.dropped[0].find("x=0.4"), std::string::npos);
    EXPECT_NEAR(r.params.alpha, 1.0, 1e-12);
    EXPECT_NEAR(r.params.beta, 1.0, 1e-12);
}

TEST(LseGammaLog, Errors) {
    EXPECT_THROW(lse_gamma_log_points({0.5, 0.7}, {1.0, 0.0}), InsufficientData);
    EXPECT_THROW(lse_gamma_log_points({0.5}, {1.0}), InsufficientData);
    EXPECT_THROW(lse_gamma_log_points({0.5, 0.5, 0.5}, {1.0, 2.0, 3.0}), DegenerateGrid);
    EXPECT_THROW(lse_gamma_log_points({0.5, 0.7}, {1.0}), std::invalid_argument);
    EXPECT_THROW(lse_gamma_log_points({-0.5, 0.7}, {1.0, 1.0}), std::invalid_argument);
}

TEST(LseGammaLog, IncreasingValuesFlagged) {
    // x p(x) increasing in x: slope > 0 has no Gamma reading
    const auto r = lse_gamma_log_points({0.2, 0.4}, {5.0, 5.0});
    EXPECT_FALSE(r.converged);
    EXPECT_LE(r.params.beta, 0.0);
}

TEST(LseGammaLog, ExactlyInvariantUnderReordering) {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> ux(0.05, 3.0);
    std::uniform_real_distribution<double> noise(0.5, 1.5);
    std::vector<double> xs;
    std::vector<double> ps;
    for (int i = 0; i < 30; ++i) {
        const double x = ux(gen);
        xs.push_back(x);
        ps.push_back(gamma_levy(1.0, 1.0, x) * noise(gen));
    }
    const auto base = lse_gamma_log_points(xs, ps);
    std::vector<std::size_t> order(xs.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    for (int trial = 0; trial < 20; ++trial) {
        std::shuffle(order.begin(), order.end(), gen);
        std::vector<double> x2;
        std::vector<double> p2;
        for (std::size_t i : order) {
            x2.push_back(xs[i]);
            p2.push_back(ps[i]);
        }
        const auto r = lse_gamma_log_points(x2, p2);
        EXPECT_EQ(r.params.alpha, base.params.alpha);
        EXPECT_EQ(r.params.beta, base.params.beta);
        EXPECT_EQ(r.objective, base.objective);
    }
}

TEST(LseGammaLog, OlsOptimality) {
    // the fitted line beats every perturbed line on its own criterion
    std::mt19937_64 gen(3);
    std::normal_distribution<double> nz(0.0, 0.2);
    std::vector<double> xs;
    std::vector<double> ys;
    std::vector<double> ps;
    for (int i = 1; i <= 12; ++i) {
        const double x = 0.1 * i;
        xs.push_back(x);
        ps.push_back(gamma_levy(1.0, 1.0, x) * std::exp(nz(gen)));
        ys.push_back(std::log(x * ps.back()));
    }
    const auto r = lse_gamma_log_points(xs, ps);
    auto rss = [&](double intercept, double slope) {
        double acc = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double e = ys[i] - intercept - slope * xs[i];
            acc += e * e;
        }
        return acc;
    };
    const double a0 = std::log(r.params.alpha);
    const double s0 = -1.0 / r.params.beta;
    EXPECT_NEAR(rss(a0, s0), r.objective, 1e-12);
    for (double da : {-1e-3, 0.0, 1e-3}) {
        for (double ds : {-1e-3, 0.0, 1e-3}) {
            EXPECT_GE(rss(a0 + da, s0 + ds), r.objective - 1e-14);
        }
    }
}

TEST(LseGammaDirect, NoiselessRecovery) {
    for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{0.5, 2.0}, std::pair{2.0, 0.5}}) {
        std::vector<double> xs;
        std::vector<double> ps;
        for (int i = 0; i < 10; ++i) {
            xs.push_back(0.1 + 0.2 * i);
            ps.push_back(gamma_levy(a, b, xs.back()));
        }
        const auto r = lse_gamma_direct_points(xs, ps, {1.0, 1.0});
        EXPECT_TRUE(r.converged);
        EXPECT_NEAR(r.params.alpha, a, 1e-6 * a);
        EXPECT_NEAR(r.params.beta, b, 1e-6 * b);
    }
}

TEST(LseGammaDirect, FarInitialGuess) {
    std::vector<double> xs{0.2, 0.5, 0.9, 1.4, 2.0};
    std::vector<double> ps;
    for (double x : xs) {
        ps.push_back(gamma_levy(0.5, 2.0, x));
    }
    const auto r = lse_gamma_direct_points(xs, ps, {50.0, 0.01});
    EXPECT_NEAR(r.params.alpha, 0.5, 1e-6);
    EXPECT_NEAR(r.params.beta, 2.0, 1e-5);
}

TEST(LseGammaDirect, DescentAndOptimality) {
    std::mt19937_64 gen(11);
    std::normal_distribution<double> nz(0.0, 0.1);
    std::vector<double> xs;
    std::vector<double> ps;
    for (int i = 0; i < 15; ++i) {
        xs.push_back(0.1 + 0.06 * i);
        ps.push_back(gamma_levy(1.0, 1.0, xs.back()) * (1.0 + nz(gen)));
    }
    for (GammaParams init : {GammaParams{1.0, 1.0}, GammaParams{0.2, 5.0}, GammaParams{3.0, 0.3}}) {
        const auto r = lse_gamma_direct_points(xs, ps, init);
        EXPECT_LE(r.objective, lse_gamma_direct_objective(init, xs, ps));
        EXPECT_DOUBLE_EQ(r.objective, lse_gamma_direct_objective(r.params, xs, ps));
        // no better candidate on a fine grid around the optimum
        for (double fa : {0.99, 1.0, 1.01}) {
            for (double fb : {0.99, 1.0, 1.01}) {
                const GammaParams cand{r.params.alpha * fa, r.params.beta * fb};
                EXPECT_GE(lse_gamma_direct_objective(cand, xs, ps), r.objective * (1.0 - 1e-9));
            }
        }
    }
}

TEST(LseGammaDirect, Errors) {
    EXPECT_THROW(lse_gamma_direct_points({}, {}, {1.0, 1.0}), InsufficientData);
    EXPECT_THROW(lse_gamma_direct_points({0.5}, {1.0}, {-1.0, 1.0}), std::invalid_argument);
    EXPECT_THROW(lse_gamma_direct_points({0.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}), std::invalid_argument);
}

TEST(MleGamma, LargeSampleAgainstGridSearch) {
    // k = alpha dt = 5, beta = 1, dt = 1
    const std::size_t n = 100000;
    IncrementSeries inc;
    inc.horizon = static_cast<double>(n);
    RngStream rng(2024, 0);
    for (std::size_t i = 0; i < n; ++i) {
        inc.increments.push_back(rng.gamma(5.0));
    }
    const auto r = mle_gamma(inc);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.params.alpha, 5.0, 0.1);
    EXPECT_NEAR(r.params.beta, 1.0, 0.02);

    const auto g = grid_search(inc.increments, 4.5, 5.5, 0.9, 1.1, 200);
    EXPECT_NEAR(r.params.alpha, g.k, 0.01);
    EXPECT_NEAR(r.params.beta, g.beta, 0.002);
    EXPECT_GE(-r.objective, g.loglik - 1e-6 * std::abs(g.loglik));
    EXPECT_NEAR(-r.objective, gamma_log_likelihood(r.params, inc), 1e-9 * std::abs(r.objective));
}

TEST(MleGamma, SolvesScoreEquations) {
    IncrementSeries inc;
    inc.horizon = 365.0;
    RngStream rng(5, 1);
    for (int i = 0; i < 730; ++i) {
        inc.increments.push_back(2.0 * rng.gamma(0.5));
    }
    const auto r = mle_gamma(inc);
    const double n = static_cast<double>(inc.increments.size());
    const double a = r.params.alpha;
    const double b = r.params.beta;
    const double ha = 1e-6 * a;
    const double hb = 1e-6 * b;
    const double da = (gamma_log_likelihood({a + ha, b}, inc) - gamma_log_likelihood({a - ha, b}, inc)) / (2 * ha);
    const double db = (gamma_log_likelihood({a, b + hb}, inc) - gamma_log_likelihood({a, b - hb}, inc)) / (2 * hb);
    EXPECT_LT(std::abs(da), 1e-6 * n);
    EXPECT_LT(std::abs(db), 1e-6 * n);
}

TEST(MleGamma, ScaleInvariance) {
    IncrementSeries inc;
    inc.horizon = 10.0;
    RngStream rng(9, 0);
    for (int i = 0; i < 500; ++i) {
        inc.increments.push_back(rng.gamma(0.3));
    }
    const auto base = mle_gamma(inc);
    for (double c : {0.001, 3.0, 1e4}) {
        IncrementSeries scaled = inc;
        for (double& x : scaled.increments) {
            x *= c;
        }
        const auto r = mle_gamma(scaled);
        EXPECT_NEAR(r.params.alpha, base.params.alpha, 1e-10 * base.params.alpha);
        EXPECT_NEAR(r.params.beta, c * base.params.beta, 1e-10 * c * base.params.beta);
    }
}

TEST(MleGamma, Errors) {
    IncrementSeries inc;
    inc.horizon = 3.0;
    inc.increments = {0.5, 0.0, 1.0};
    EXPECT_THROW(mle_gamma(inc), InvalidData);
    inc.increments = {0.5, -0.1, 1.0};
    EXPECT_THROW(mle_gamma(inc), InvalidData);
    inc.increments = {0.7, 0.7, 0.7};
    EXPECT_THROW(mle_gamma(inc), DegenerateData);
    inc.increments = {};
    EXPECT_THROW(mle_gamma(inc), std::invalid_argument);
}

TEST(VgMoments, MatchCumulantOracle) {
    for (auto p : {VGParams{1.0, 1.0, 0.5}, VGParams{-0.3, 0.7, 0.2}, VGParams{-0.00056256, std::sqrt(0.01373584), 0.002}}) {
        for (double dt : {1.0, 0.25}) {
            const auto m = vg_central_moments(p, dt);
            const auto o = oracle::vg_moments_by_cumulants(p.theta, p.sigma, p.nu, dt);
            const double scale2 = m.m2;
            EXPECT_NEAR(m.mean, o.mean, 1e-6 * std::sqrt(scale2));
            EXPECT_NEAR(m.m2, o.m2, 1e-6 * scale2);
            EXPECT_NEAR(m.m3, o.m3, 1e-6 * std::pow(scale2, 1.5));
            EXPECT_NEAR(m.m4, o.m4, 1e-6 * m.m4);
        }
    }
}

TEST(VgMoments, AtUnitParameters) {
    // theta = sigma = dt = 1, nu = 0.5
    const auto m = vg_central_moments({1.0, 1.0, 0.5}, 1.0);
    EXPECT_DOUBLE_EQ(m.mean, 1.0);
    EXPECT_DOUBLE_EQ(m.m2, 1.5);
    EXPECT_DOUBLE_EQ(m.m3, 2.0);
    EXPECT_DOUBLE_EQ(m.m4, 1.5 + 3.0 + 0.75 + 3.0 * 2.25);
}

TEST(MomVg, SymmetricNoiselessRecovery) {
    const VGParams p{0.0, 0.3, 0.4};
    const double dt = 0.5;
    const auto r = mom_vg_from_moments(vg_central_moments(p, dt), dt, 1000);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.params.theta, 0.0, 1e-15);
    EXPECT_NEAR(r.params.sigma, 0.3, 1e-12);
    EXPECT_NEAR(r.params.nu, 0.4, 1e-12);
    // theta = 0: nu = excess kurtosis * dt / 3
    const auto m = vg_central_moments(p, dt);
    EXPECT_NEAR(r.params.nu, (m.m4 / (3.0 * m.m2 * m.m2) - 1.0) * dt, 1e-12);
}

TEST(MomVg, SkewedNoiselessRecoveryAtSmallNuTheta) {
    const VGParams p{-0.00056256, std::sqrt(0.01373584), 0.002};
    const double dt = 1.0 / (8.0 * 365.0);
    const auto r = mom_vg_from_moments(vg_central_moments(p, dt), dt, 5000);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.params.theta, p.theta, 1e-12);
    EXPECT_NEAR(r.params.sigma, p.sigma, 1e-9 * p.sigma);
    EXPECT_NEAR(r.params.nu, p.nu, 1e-9 * p.nu);
}

TEST(MomVg, ReproducesItsInputMoments) {
    for (auto p : {VGParams{0.2, 0.5, 0.1}, VGParams{-0.1, 1.0, 0.3}}) {
        RngStream rng(77, 0);
        const auto inc = simulate_vg_timechange(p, 2000.0, 2000, rng);
        const auto sm = sample_moments(inc.increments);
        const auto r = mom_vg(inc);
        ASSERT_TRUE(r.converged);
        const auto fit = vg_central_moments(r.params, inc.step());
        EXPECT_NEAR(fit.mean, sm.mean, 1e-12 * std::sqrt(sm.m2));
        // five fixed-point passes leave a small residual
        EXPECT_NEAR(fit.m2, sm.m2, 1e-5 * sm.m2);
        EXPECT_NEAR(fit.m4, sm.m4, 1e-5 * sm.m4);
        EXPECT_LT(r.objective, 1e-10);
    }
}

TEST(MomVg, InfeasibleMoments) {
    // uniform-like sample: negative excess kurtosis
    IncrementSeries inc;
    inc.horizon = 8.0;
    inc.increments = {-1.0, -0.75, -0.5, -0.25, 0.25, 0.5, 0.75, 1.0};
    const auto r = mom_vg(inc);
    EXPECT_FALSE(r.converged);
    EXPECT_EQ(r.params.nu, 1e-8);
    EXPECT_FALSE(r.dropped.empty());
}

TEST(MomVg, Errors) {
    IncrementSeries inc;
    inc.horizon = 3.0;
    inc.increments = {1.0, 2.0, 3.0};
    EXPECT_THROW(mom_vg(inc), InsufficientData);
    inc.increments = {1.0, 1.0, 1.0, 1.0};
    inc.horizon = 4.0;
    EXPECT_THROW(mom_vg(inc), DegenerateData);
}

TEST(MomVg, MarketProtocolCentredOnActivity) {
    // annualized parameters, 5000 increments of an eighth of a day
    const VGParams p{-0.00056256, std::sqrt(0.01373584), 0.002};
    const double dt = 1.0 / (8.0 * 365.0);
    std::vector<double> alphas;
    std::vector<double> betas;
    for (std::uint64_t s = 0; s < 200; ++s) {
        const auto inc = simulate_vg_timechange(p, 5000 * dt, 5000, RngStream(31, s));
        const auto r = mom_vg(inc);
        const auto pair = vg_to_gamma_pair(r.params);
        alphas.push_back(pair.alpha);
        betas.push_back(pair.beta_plus);
    }
    EXPECT_NEAR(median(alphas), 500.0, 100.0);
    EXPECT_NEAR(median(betas), 0.0037056, 0.25 * 0.0037056);
}

TEST(VgPair, RoundTripIsIdentity) {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> th(-2.0, 2.0);
    std::uniform_real_distribution<double> pos(0.01, 3.0);
    for (int i = 0; i < 200; ++i) {
        const VGParams p{th(gen), pos(gen), pos(gen)};
        const auto q = gamma_pair_to_vg(vg_to_gamma_pair(p));
        EXPECT_NEAR(q.theta, p.theta, 1e-10 * std::max(1.0, std::abs(p.theta)));
        EXPECT_NEAR(q.sigma, p.sigma, 1e-10 * p.sigma);
        EXPECT_NEAR(q.nu, p.nu, 1e-10 * p.nu);
    }
}

TEST(LseVgTails, ExactTailsInvertToParameters) {
    for (auto p : {VGParams{0.3, 0.8, 0.5}, VGParams{-0.2, 1.2, 0.25}}) {
        const auto pair = vg_to_gamma_pair(p);
        const auto left = histogram_of({-2.0, -0.1}, 12, [&](double x) { return gamma_levy(pair.alpha, pair.beta_minus, -x); });
        const auto right = histogram_of({0.1, 2.0}, 12, [&](double x) { return gamma_levy(pair.alpha, pair.beta_plus, x); });
        const auto fit = lse_vg_tails(left, right, FitGrid::midpoints(left.model), FitGrid::midpoints(right.model));
        EXPECT_TRUE(fit.vg.converged);
        EXPECT_NEAR(fit.pair.alpha, pair.alpha, 1e-10 * pair.alpha);
        EXPECT_NEAR(fit.pair.beta_plus, pair.beta_plus, 1e-10);
        EXPECT_NEAR(fit.pair.beta_minus, pair.beta_minus, 1e-10);
        EXPECT_NEAR(fit.vg.params.theta, p.theta, 1e-9);
        EXPECT_NEAR(fit.vg.params.sigma, p.sigma, 1e-9);
        EXPECT_NEAR(fit.vg.params.nu, p.nu, 1e-9);
    }
}

TEST(LseVgTails, SymmetricTruthGivesBalancedTails) {
    const VGParams p{0.0, 1.0, 0.5};
    const auto pair = vg_to_gamma_pair(p);
    const double T = 2000.0;
    std::vector<double> ratio;
    std::vector<double> theta;
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto jumps = simulate_vg_difference(p, T, 40000, RngStream(12, s));
        const auto left = project(jumps, build_model({-1.5, -0.1}, ReferenceMeasure::lebesgue(), BasisSpec::regular(10)));
        const auto right = project(jumps, build_model({0.1, 1.5}, ReferenceMeasure::lebesgue(), BasisSpec::regular(10)));
        const auto fit = lse_vg_tails(left, right, FitGrid::midpoints(left.model), FitGrid::midpoints(right.model));
        ratio.push_back(fit.pair.beta_plus / fit.pair.beta_minus);
        theta.push_back(fit.vg.params.theta);
    }
    const auto rs = oracle::summarize(ratio);
    const auto ts = oracle::summarize(theta);
    EXPECT_NEAR(rs.mean, 1.0, 4.0 * rs.se + 0.01);
    EXPECT_NEAR(ts.mean, 0.0, 4.0 * ts.se + 0.01);
    EXPECT_NEAR(median(ratio), 1.0, 0.1);
    (void)pair;
}

TEST(LseVgTails, MarketProtocolPattern) {
    // increments of an eighth of a day; each tail on [0.002, 0.02] with 10 bins
    const VGParams p{-0.00056256, std::sqrt(0.01373584), 0.002};
    const double dt = 1.0 / (8.0 * 365.0);
    const auto left_model = build_model({-0.02, -0.002}, ReferenceMeasure::lebesgue(), BasisSpec::regular(10));
    const auto right_model = build_model({0.002, 0.02}, ReferenceMeasure::lebesgue(), BasisSpec::regular(10));
    std::vector<double> lse_alpha;
    std::vector<double> lse_beta;
    std::vector<double> mom_alpha;
    for (std::uint64_t s = 0; s < 200; ++s) {
        const auto inc = simulate_vg_timechange(p, 5000 * dt, 5000, RngStream(31, s));
        const auto left = approx_project(inc, left_model);
        const auto right = approx_project(inc, right_model);
        const auto fit = lse_vg_tails(left, right, FitGrid::midpoints(left_model), FitGrid::midpoints(right_model));
        lse_alpha.push_back(fit.pair.alpha);
        lse_beta.push_back(fit.pair.beta_plus);
        mom_alpha.push_back(vg_to_gamma_pair(mom_vg(inc).params).alpha);
    }
    const double a_lse = median(lse_alpha);
    const double b_lse = median(lse_beta);
    const double a_mom = median(mom_alpha);
    // alpha underestimated, beta overestimated, moments closer
    EXPECT_LT(a_lse, 500.0);
    EXPECT_GT(b_lse, 0.0037056);
    EXPECT_LT(std::abs(a_mom - 500.0), std::abs(a_lse - 500.0));
    EXPECT_NEAR(b_lse, 0.0037056, 0.25 * 0.0037056);
    EXPECT_GT(a_lse, 0.7 * 500.0);
    RecordProperty("median_alpha_lse", std::to_string(a_lse));
    RecordProperty("median_beta_plus_lse", std::to_string(b_lse));
}

TEST(LseVgTails, Errors) {
    const auto pos = histogram_of({0.1, 1.0}, 4, [](double x) { return gamma_levy(1, 1, x); });
    const auto g = FitGrid::midpoints(pos.model);
    EXPECT_THROW(lse_vg_tails(pos, pos, g, g), std::invalid_argument);
    const auto empty = histogram_of({-1.0, -0.1}, 4, [](double) { return 0.0; });
    EXPECT_THROW(lse_vg_tails(empty, pos, FitGrid::midpoints(empty.model), g), InsufficientData);
}

TEST(FitGrid, MidpointsOfRegularModel) {
    const auto m = build_model({0.1, 1.0}, ReferenceMeasure::lebesgue(), BasisSpec::regular(3));
    const auto g = FitGrid::midpoints(m);
    ASSERT_EQ(g.points.size(), 3u);
    EXPECT_NEAR(g.points[0], 0.25, 1e-15);
    EXPECT_NEAR(g.points[2], 0.85, 1e-15);
}

TEST(BenchmarkRuns, PenalizedHistogramLogFitGamma11) {
    // 2000 series terms on [0, 365], window [0.1, 1], pen B c = 2
    const Window window{0.1, 1.0};
    const auto family = regular_family(window, ReferenceMeasure::lebesgue(), 1, 40);
    std::vector<double> alphas;
    std::vector<double> betas;
    for (std::uint64_t s = 0; s < 50; ++s) {
        const auto jumps = simulate_gamma_jumps({1.0, 1.0}, 365.0, 2000, RngStream(100, s));
        const auto sel = select(jumps, family, PenaltyForm::b(2.0));
        const auto fit = lse_gamma_log(sel.estimate, FitGrid::midpoints(sel.estimate.model));
        alphas.push_back(fit.params.alpha);
        betas.push_back(fit.params.beta);
    }
    EXPECT_NEAR(median(alphas), 1.0, 0.25);
    EXPECT_NEAR(median(betas), 1.0, 0.25);
}

TEST(BenchmarkRuns, PenalizedHistogramDirectFitHeavyTail) {
    // Gamma(0.5, 2), direct least squares
    const Window window{0.1, 1.0};
    const auto family = regular_family(window, ReferenceMeasure::lebesgue(), 1, 40);
    std::vector<double> alphas;
    std::vector<double> betas;
    for (std::uint64_t s = 0; s < 50; ++s) {
        const auto jumps = simulate_gamma_jumps({0.5, 2.0}, 365.0, 2000, RngStream(200, s));
        const auto sel = select(jumps, family, PenaltyForm::b(2.0));
        const auto fit = lse_gamma_direct(sel.estimate, FitGrid::midpoints(sel.estimate.model), {1.0, 1.0});
        alphas.push_back(fit.params.alpha);
        betas.push_back(fit.params.beta);
    }
    EXPECT_NEAR(median(alphas), 0.5, 0.25);
    EXPECT_NEAR(median(betas), 2.0, 0.6);
}
