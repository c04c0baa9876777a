#include "levy/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>

#include "levy/errors.hpp"
#include "levy/special.hpp"

namespace levy {

namespace {

std::string point_note(double x, const char* why) {
    std::ostringstream out;
    out.precision(17);
    out << "x=" << x << ": " << why;
    return out.str();
}

struct GridValues {
    std::vector<double> xs;
    std::vector<double> values;
};

GridValues levy_values(const ProjectionEstimate& estimate, const FitGrid& grid) {
    const auto& model = estimate.model;
    GridValues out;
    for (double x : grid.points) {
        if (!model.window().contains(x)) {
            throw std::invalid_argument(point_note(x, "grid point outside the estimation window"));
        }
        out.xs.push_back(x);
        out.values.push_back(estimate(x) * model.measure().density(x));
    }
    return out;
}

}  // namespace

FitGrid FitGrid::midpoints(const LinearModel& model) {
    FitGrid out;
    const auto& cuts = model.cutpoints();
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        out.points.push_back(0.5 * (cuts[i] + cuts[i + 1]));
    }
    return out;
}

FitReport<GammaParams> lse_gamma_log_points(const std::vector<double>& xs, const std::vector<double>& values) {
    if (xs.size() != values.size()) {
        throw std::invalid_argument("grid and value vectors differ in length");
    }
    FitReport<GammaParams> report;
    report.method = "lse-log";
    report.grid = xs;
    // sorted so the sums do not depend on the input order
    std::vector<std::size_t> order(xs.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
    std::vector<double> u;
    std::vector<double> y;
    for (std::size_t i : order) {
        const double x = xs[i];
        if (!(x > 0.0)) {
            throw std::invalid_argument(point_note(x, "log regression needs x > 0"));
        }
        if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
            report.dropped.push_back(point_note(x, "estimate <= 0, log undefined"));
            continue;
        }
        u.push_back(x);
        y.push_back(std::log(x * values[i]));
    }
    report.n_points_used = u.size();
    if (u.size() < 2) {
        throw InsufficientData("log-linear Gamma fit needs at least 2 points with a positive estimate");
    }
    const double n = static_cast<double>(u.size());
    double mu = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        mu += u[i];
        my += y[i];
    }
    mu /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        sxx += (u[i] - mu) * (u[i] - mu);
        sxy += (u[i] - mu) * (y[i] - my);
    }
    if (!(sxx > 0.0)) {
        throw DegenerateGrid("log-linear Gamma fit needs at least two distinct grid points");
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mu;
    double rss = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double r = y[i] - intercept - slope * u[i];
        rss += r * r;
    }
    report.params.alpha = std::exp(intercept);
    report.params.beta = -1.0 / slope;
    report.objective = rss;
    report.iterations = 1;
    report.converged = slope < 0.0;
    return report;
}

FitReport<GammaParams> lse_gamma_log(const ProjectionEstimate& estimate, const FitGrid& grid) {
    const GridValues gv = levy_values(estimate, grid);
    return lse_gamma_log_points(gv.xs, gv.values);
}

double lse_gamma_direct_objective(const GammaParams& params, const std::vector<double>& xs,
                                  const std::vector<double>& values) {
    double acc = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = params.alpha / xs[i] * std::exp(-xs[i] / params.beta) - values[i];
        acc += r * r;
    }
    return acc;
}

namespace {

// Best alpha >= 0 for a fixed beta.
double alpha_given_beta(double beta, const std::vector<double>& xs, const std::vector<double>& values) {
    double gy = 0.0;
    double gg = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double g = std::exp(-xs[i] / beta) / xs[i];
        gy += g * values[i];
        gg += g * g;
    }
    if (!(gg > 0.0)) {
        return 0.0;
    }
    return std::max(0.0, gy / gg);
}

}  // namespace

FitReport<GammaParams> lse_gamma_direct_points(const std::vector<double>& xs, const std::vector<double>& values,
                                               const GammaParams& init) {
    init.validate();
    if (xs.size() != values.size()) {
        throw std::invalid_argument("grid and value vectors differ in length");
    }
    if (xs.empty()) {
        throw InsufficientData("direct Gamma fit needs a non-empty grid");
    }
    for (double x : xs) {
        if (!(x > 0.0)) {
            throw std::invalid_argument(point_note(x, "Gamma Levy density needs x > 0"));
        }
    }
    FitReport<GammaParams> report;
    report.method = "lse-direct";
    report.grid = xs;
    report.n_points_used = xs.size();

    auto profiled = [&](double log_beta) {
        const double beta = std::exp(log_beta);
        return lse_gamma_direct_objective({alpha_given_beta(beta, xs, values), beta}, xs, values);
    };

    const double init_objective = lse_gamma_direct_objective(init, xs, values);
    double centre = std::log(init.beta);
    double half_width = 7.0;
    double best_log_beta = centre;
    double best = profiled(centre);
    constexpr int kBits = std::numeric_limits<double>::digits / 2;
    constexpr std::size_t kMaxPasses = 200;
    report.converged = false;
    for (std::size_t pass = 1; pass <= kMaxPasses; ++pass) {
        report.iterations = pass;
        std::uintmax_t max_iter = 500;
        const auto found = boost::math::tools::brent_find_minima(profiled, centre - half_width,
                                                                 centre + half_width, kBits, max_iter);
        const double previous = best;
        if (found.second <= best) {
            best = found.second;
            best_log_beta = found.first;
        }
        const double change = std::abs(previous - best);
        if (pass > 1 && change <= 1e-10 * std::max(std::abs(previous), std::numeric_limits<double>::min())) {
            report.converged = true;
            break;
        }
        // a minimiser on the bracket edge means the bracket was too narrow
        const bool on_edge = std::abs(found.first - centre) > 0.9 * half_width;
        centre = best_log_beta;
        half_width = on_edge ? half_width * 2.0 : std::max(half_width * 0.25, 1e-6);
    }
    const double beta = std::exp(best_log_beta);
    GammaParams fitted{alpha_given_beta(beta, xs, values), beta};
    double objective = lse_gamma_direct_objective(fitted, xs, values);
    if (!(fitted.alpha > 0.0) || init_objective < objective) {
        fitted = init;
        objective = init_objective;
    }
    report.params = fitted;
    report.objective = objective;
    return report;
}

FitReport<GammaParams> lse_gamma_direct(const ProjectionEstimate& estimate, const FitGrid& grid,
                                        const GammaParams& init) {
    const GridValues gv = levy_values(estimate, grid);
    return lse_gamma_direct_points(gv.xs, gv.values, init);
}

double gamma_log_likelihood(const GammaParams& params, const IncrementSeries& increments) {
    params.validate();
    const double k = params.alpha * increments.step();
    const double norm = std::lgamma(k) + k * std::log(params.beta);
    double acc = 0.0;
    for (double x : increments.increments) {
        acc += (k - 1.0) * std::log(x) - x / params.beta - norm;
    }
    return acc;
}

FitReport<GammaParams> mle_gamma(const IncrementSeries& increments) {
    if (increments.increments.empty() || !(increments.horizon > 0.0)) {
        throw std::invalid_argument("MLE needs a non-empty series with positive horizon");
    }
    double sum = 0.0;
    double sum_log = 0.0;
    for (double x : increments.increments) {
        if (!(x > 0.0) || !std::isfinite(x)) {
            throw InvalidData("Gamma MLE needs strictly positive increments; this series cannot be a Gamma skeleton");
        }
        sum += x;
        sum_log += std::log(x);
    }
    const double n = static_cast<double>(increments.increments.size());
    const double mean = sum / n;
    const double s = std::log(mean) - sum_log / n;
    if (!(s > 0.0)) {
        throw DegenerateData("Gamma MLE is undefined when all increments are equal");
    }

    // 1/(2k) < log k - psi(k) < 1/k brackets the root
    double lo = 0.5 / s;
    double hi = 1.0 / s;
    double k = (3.0 - s + std::sqrt((s - 3.0) * (s - 3.0) + 24.0 * s)) / (12.0 * s);
    if (!(k > lo && k < hi)) {
        k = 0.5 * (lo + hi);
    }
    FitReport<GammaParams> report;
    report.method = "mle";
    report.n_points_used = increments.increments.size();
    report.converged = false;
    for (std::size_t it = 1; it <= 100; ++it) {
        report.iterations = it;
        const double g = log_minus_digamma(k) - s;
        if (g > 0.0) {
            lo = k;
        } else {
            hi = k;
        }
        const double step = g / log_minus_digamma_derivative(k);
        double next = k - step;
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        const bool done = std::abs(next - k) <= 1e-14 * k || (hi - lo) <= 1e-15 * hi;
        k = next;
        if (done) {
            report.converged = true;
            break;
        }
    }
    const double dt = increments.step();
    report.params = {k / dt, mean / k};
    report.objective = -gamma_log_likelihood(report.params, increments);
    return report;
}

VGMoments vg_central_moments(const VGParams& params, double dt) {
    params.validate();
    const double th = params.theta;
    const double s2 = params.sigma * params.sigma;
    const double nu = params.nu;
    VGMoments out;
    out.mean = th * dt;
    out.m2 = (s2 + nu * th * th) * dt;
    out.m3 = (3.0 * s2 * th * nu + 2.0 * th * th * th * nu * nu) * dt;
    const double k4 = (3.0 * s2 * s2 * nu + 12.0 * s2 * th * th * nu * nu + 6.0 * th * th * th * th * nu * nu * nu) * dt;
    out.m4 = k4 + 3.0 * out.m2 * out.m2;
    return out;
}

VGMoments sample_moments(const std::vector<double>& xs) {
    if (xs.empty()) {
        throw InsufficientData("sample moments need data");
    }
    const double n = static_cast<double>(xs.size());
    double mean = 0.0;
    for (double x : xs) {
        mean += x;
    }
    mean /= n;
    VGMoments out;
    out.mean = mean;
    for (double x : xs) {
        const double d = x - mean;
        const double d2 = d * d;
        out.m2 += d2;
        out.m3 += d2 * d;
        out.m4 += d2 * d2;
    }
    out.m2 /= n;
    out.m3 /= n;
    out.m4 /= n;
    return out;
}

FitReport<VGParams> mom_vg_from_moments(const VGMoments& mo, double dt, std::size_t n) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("time step must be positive");
    }
    if (!(mo.m2 > 0.0)) {
        throw DegenerateData("method of moments needs a positive sample variance");
    }
    constexpr double kNuFloor = 1e-8;
    FitReport<VGParams> report;
    report.method = "mom";
    report.n_points_used = n;
    const double theta = mo.mean / dt;
    const double k4 = mo.m4 - 3.0 * mo.m2 * mo.m2;
    double s2 = mo.m2 / dt;
    double nu = k4 / (3.0 * s2 * s2 * dt);
    bool feasible = k4 > 0.0;
    if (feasible) {
        for (int pass = 0; pass < 5; ++pass) {
            s2 = mo.m2 / dt - nu * theta * theta;
            if (!(s2 > 0.0)) {
                feasible = false;
                report.dropped.push_back("sigma^2 <= 0 during the fixed-point passes");
                break;
            }
            const double t2 = theta * theta;
            nu = (k4 / dt - 12.0 * s2 * t2 * nu * nu - 6.0 * t2 * t2 * nu * nu * nu) / (3.0 * s2 * s2);
            if (!(nu > 0.0)) {
                feasible = false;
                report.dropped.push_back("nu <= 0 during the fixed-point passes");
                break;
            }
        }
        report.iterations = 5;
    } else {
        report.dropped.push_back("infeasible moments: excess kurtosis <= 0");
    }
    if (!feasible) {
        nu = kNuFloor;
        s2 = std::max(mo.m2 / dt - nu * theta * theta, std::numeric_limits<double>::min());
    }
    report.params = {theta, std::sqrt(s2), std::max(nu, kNuFloor)};
    report.converged = feasible;
    const VGMoments fit = vg_central_moments(report.params, dt);
    const double r1 = (fit.mean - mo.mean) / std::sqrt(mo.m2);
    const double r2 = (fit.m2 - mo.m2) / mo.m2;
    const double r4 = (fit.m4 - mo.m4) / mo.m4;
    report.objective = r1 * r1 + r2 * r2 + r4 * r4;
    return report;
}

FitReport<VGParams> mom_vg(const IncrementSeries& increments) {
    if (increments.increments.size() < 4) {
        throw InsufficientData("method of moments needs at least 4 increments");
    }
    return mom_vg_from_moments(sample_moments(increments.increments), increments.step(),
                               increments.increments.size());
}

VGTailFit lse_vg_tails(const ProjectionEstimate& left, const ProjectionEstimate& right, const FitGrid& left_grid,
                       const FitGrid& right_grid) {
    if (left.model.window().hi > 0.0) {
        throw std::invalid_argument("left tail estimate must live on a window of negative sizes");
    }
    if (right.model.window().lo < 0.0) {
        throw std::invalid_argument("right tail estimate must live on a window of positive sizes");
    }
    GridValues lv = levy_values(left, left_grid);
    for (double& x : lv.xs) {
        x = -x;
    }
    const GridValues rv = levy_values(right, right_grid);
    VGTailFit out;
    out.left = lse_gamma_log_points(lv.xs, lv.values);
    out.right = lse_gamma_log_points(rv.xs, rv.values);
    out.pair = {0.5 * (out.left.params.alpha + out.right.params.alpha), out.right.params.beta,
                out.left.params.beta};
    out.vg.method = "lse-vg-tails";
    out.vg.n_points_used = out.left.n_points_used + out.right.n_points_used;
    for (const auto& d : out.left.dropped) {
        out.vg.dropped.push_back("left " + d);
    }
    for (const auto& d : out.right.dropped) {
        out.vg.dropped.push_back("right " + d);
    }
    out.vg.objective = out.left.objective + out.right.objective;
    out.vg.iterations = 1;
    out.vg.converged = out.left.converged && out.right.converged;
    if (out.vg.converged) {
        out.vg.params = gamma_pair_to_vg(out.pair);
    } else {
        out.vg.params = {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN(),
                         std::numeric_limits<double>::quiet_NaN()};
    }
    return out;
}

}  // namespace levy
