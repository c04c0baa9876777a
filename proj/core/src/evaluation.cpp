#include "levy/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <type_traits>

#include "levy/parallel.hpp"
#include "levy/quadrature.hpp"

namespace levy {

namespace {

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
    double variance = 0.0;
};

MeanSe summarize(const std::vector<double>& xs) {
    MeanSe out;
    if (xs.empty()) {
        out.mean = out.se = out.variance = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    const double n = static_cast<double>(xs.size());
    double sum = 0.0;
    for (double x : xs) {
        sum += x;
    }
    out.mean = sum / n;
    if (xs.size() < 2) {
        out.se = out.variance = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    double ss = 0.0;
    for (double x : xs) {
        ss += (x - out.mean) * (x - out.mean);
    }
    out.variance = ss / (n - 1.0);
    out.se = std::sqrt(out.variance / n);
    return out;
}

std::size_t terms_for_window(const GammaParams& params, double horizon, const Window& window) {
    const double gap = window.lo > 0.0 ? window.lo : (window.hi < 0.0 ? -window.hi : 0.0);
    if (gap > 0.0) {
        return gamma_series_terms_for(params, horizon, gap, 1e-6);
    }
    return gamma_series_terms_for_mass(params, horizon, 1e-9 * params.alpha * params.beta * horizon);
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Window sampling_window(const ExperimentConfig& config) {
    if (config.collection.kind == CollectionSpec::Kind::Regularized) {
        return {0.0, config.window.hi};
    }
    return config.window;
}

std::vector<double> sizes_in(const JumpSet& jumps, const Window& window) {
    std::vector<double> out;
    for (const auto& j : jumps.jumps) {
        if (window.contains(j.size)) {
            out.push_back(j.size);
        }
    }
    return out;
}

}  // namespace

std::size_t gamma_series_terms_for_mass(const GammaParams& params, double horizon, double tol) {
    params.validate();
    if (!(horizon > 0.0) || !(tol > 0.0)) {
        throw std::invalid_argument("horizon and tolerance must be positive");
    }
    const double c = params.alpha * horizon;
    const double target = std::log(tol / (params.beta * (c + 1.0)));
    if (target >= 0.0) {
        return 1;
    }
    const double n = target / (std::log(c) - std::log1p(c)) - 1.0;
    return static_cast<std::size_t>(std::max(1.0, std::ceil(n)));
}

ModelCollection CollectionSpec::build(const Window& window, const ReferenceMeasure& measure) const {
    if (kind == Kind::Regularized) {
        return regularized_family(window.hi, m_min, m_max);
    }
    return regular_family(window, measure, m_min, m_max);
}

void ExperimentConfig::validate() const {
    levy::validate(process);
    penalty.validate();
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw std::invalid_argument("experiment horizon must be positive");
    }
    if (replications < 2) {
        throw std::invalid_argument("experiments need at least 2 replications");
    }
    if (collection.m_min == 0 || collection.m_max < collection.m_min) {
        throw std::invalid_argument("collection needs 1 <= m_min <= m_max");
    }
}

std::size_t resolved_terms(const ExperimentConfig& config) {
    if (config.n_terms > 0) {
        return config.n_terms;
    }
    const Window window = sampling_window(config);
    return std::visit(overloaded{
                          [&](const GammaParams& p) { return terms_for_window(p, config.horizon, window); },
                          [&](const VGParams& p) {
                              const GammaPair g = vg_to_gamma_pair(p);
                              return std::max(terms_for_window({g.alpha, g.beta_plus}, config.horizon, window),
                                              terms_for_window({g.alpha, g.beta_minus}, config.horizon, window));
                          },
                          [&](const PiecewiseConstantLevy&) { return std::size_t{1}; },
                      },
                      config.process);
}

double RiskTable::min_model_risk() const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& row : models) {
        best = std::min(best, row.risk_mc);
    }
    return best;
}

namespace {

struct ModelTruth {
    std::vector<double> target;
    double bias_sq = 0.0;
    double second_moment = 0.0;
};

struct Replication {
    bool ok = false;
    std::string error;
    std::vector<double> risk;
    std::vector<double> chi2;
    std::vector<double> vhat;
    std::vector<std::vector<double>> coefs;
    std::size_t chosen = 0;
    double ppe_risk = 0.0;
    double ppe_chi2 = 0.0;
    double max_residual = 0.0;
    std::size_t violations = 0;
};

double truncated_mass(const ExperimentConfig& config, std::size_t terms) {
    return std::visit(overloaded{
                          [&](const GammaParams& p) { return gamma_series_truncated_mass(p, config.horizon, terms); },
                          [&](const VGParams& p) {
                              const GammaPair g = vg_to_gamma_pair(p);
                              return gamma_series_truncated_mass({g.alpha, g.beta_plus}, config.horizon, terms) +
                                     gamma_series_truncated_mass({g.alpha, g.beta_minus}, config.horizon, terms);
                          },
                          [&](const PiecewiseConstantLevy&) { return 0.0; },
                      },
                      config.process);
}

}  // namespace

RiskTable mc_risk(const ExperimentConfig& config) {
    config.validate();
    const ModelCollection models = config.collection.build(config.window, config.measure);
    const Window window = models.front().window();
    const DensitySpec truth = truth_density(config.process, models.front().measure());
    const std::size_t terms = resolved_terms(config);
    const double horizon = config.horizon;

    std::vector<ModelTruth> truths(models.size());
    parallel_for(models.size(), config.threads, [&](std::size_t i) {
        ModelTruth& t = truths[i];
        t.target = orthogonal_projection(truth, models[i]);
        t.bias_sq = l2_distance_sq(t.target, truth, models[i]);
        for (double v : basis_second_moments(truth, models[i])) {
            t.second_moment += v;
        }
    });

    std::vector<Replication> reps(config.replications);
    parallel_for(config.replications, config.threads, [&](std::size_t r) {
        Replication& rep = reps[r];
        try {
            const JumpSet jumps = simulate_jumps(config.process, horizon, terms, RngStream(config.master_seed, r));
            const std::vector<double> sizes = sizes_in(jumps, window);
            if (config.per_model) {
                rep.risk.resize(models.size());
                rep.chi2.resize(models.size());
                rep.vhat.resize(models.size());
                rep.coefs.resize(models.size());
                for (std::size_t i = 0; i < models.size(); ++i) {
                    ModelStatistics stats = accumulate(sizes, horizon, models[i]);
                    double chi2 = 0.0;
                    for (std::size_t k = 0; k < stats.coefficients.size(); ++k) {
                        const double d = stats.coefficients[k] - truths[i].target[k];
                        chi2 += d * d;
                    }
                    const double risk = l2_distance_sq(stats.coefficients, truth, models[i]);
                    const double residual = std::abs(risk - truths[i].bias_sq - chi2);
                    rep.max_residual = std::max(rep.max_residual, residual);
                    if (residual > kPythagoreanTolerance * std::max(1.0, risk)) {
                        ++rep.violations;
                    }
                    rep.risk[i] = risk;
                    rep.chi2[i] = chi2;
                    rep.vhat[i] = stats.vhat;
                    rep.coefs[i] = std::move(stats.coefficients);
                }
            }
            const SelectionResult sel = select(sizes, horizon, models, config.penalty);
            rep.chosen = sel.chosen_index;
            const auto& target = truths[sel.chosen_index].target;
            double chi2 = 0.0;
            for (std::size_t k = 0; k < target.size(); ++k) {
                const double d = sel.estimate.coefficients[k] - target[k];
                chi2 += d * d;
            }
            rep.ppe_chi2 = chi2;
            if (config.per_model) {
                rep.ppe_risk = rep.risk[sel.chosen_index];
            } else {
                rep.ppe_risk = l2_distance_sq(sel.estimate.coefficients, truth, models[sel.chosen_index]);
                const double residual = std::abs(rep.ppe_risk - truths[sel.chosen_index].bias_sq - chi2);
                rep.max_residual = residual;
                if (residual > kPythagoreanTolerance * std::max(1.0, rep.ppe_risk)) {
                    ++rep.violations;
                }
            }
            rep.ok = true;
        } catch (const std::exception& e) {
            rep.error = e.what();
        }
    });

    RiskTable table;
    table.n_terms = terms;
    table.truncated_mass = truncated_mass(config, terms);
    table.chosen_counts.assign(models.size(), 0);
    std::vector<std::size_t> good;
    for (std::size_t r = 0; r < reps.size(); ++r) {
        if (reps[r].ok) {
            good.push_back(r);
            ++table.chosen_counts[reps[r].chosen];
            table.max_pythagorean_residual = std::max(table.max_pythagorean_residual, reps[r].max_residual);
            table.pythagorean_violations += reps[r].violations;
        } else {
            ++table.replications_failed;
            if (table.failures.size() < 10) {
                table.failures.push_back("replication " + std::to_string(r) + ": " + reps[r].error);
            }
        }
    }
    table.replications_ok = good.size();

    std::vector<double> buffer(good.size());
    auto column = [&](auto&& pick) {
        for (std::size_t j = 0; j < good.size(); ++j) {
            buffer[j] = pick(reps[good[j]]);
        }
        return summarize(buffer);
    };

    if (config.per_model) {
        for (std::size_t i = 0; i < models.size(); ++i) {
            RiskRow row;
            row.index = i;
            row.dim = models[i].dim();
            row.sup_constant = models[i].sup_constant();
            row.bias_sq = truths[i].bias_sq;
            row.var_analytic = truths[i].second_moment / horizon;
            row.vhat_target = truths[i].second_moment;
            row.coef_target = truths[i].target;
            const MeanSe risk = column([&](const Replication& r) { return r.risk[i]; });
            const MeanSe chi2 = column([&](const Replication& r) { return r.chi2[i]; });
            const MeanSe vh = column([&](const Replication& r) { return r.vhat[i]; });
            row.risk_mc = risk.mean;
            row.risk_se = risk.se;
            row.var_mc = chi2.mean;
            row.var_mc_se = chi2.se;
            row.vhat_mean = vh.mean;
            row.vhat_se = vh.se;
            for (std::size_t k = 0; k < row.dim; ++k) {
                const MeanSe c = column([&](const Replication& r) { return r.coefs[i][k]; });
                row.coef_mean.push_back(c.mean);
                row.coef_se.push_back(c.se);
            }
            table.models.push_back(std::move(row));
        }
    }

    RiskRow& ppe = table.ppe;
    ppe.index = models.size();
    const MeanSe risk = column([](const Replication& r) { return r.ppe_risk; });
    const MeanSe chi2 = column([](const Replication& r) { return r.ppe_chi2; });
    const MeanSe bias = column([&](const Replication& r) { return truths[r.chosen].bias_sq; });
    const MeanSe dim = column([&](const Replication& r) { return static_cast<double>(models[r.chosen].dim()); });
    ppe.dim = static_cast<std::size_t>(std::lround(dim.mean));
    ppe.sup_constant = std::numeric_limits<double>::quiet_NaN();
    ppe.bias_sq = bias.mean;
    ppe.var_analytic = std::numeric_limits<double>::quiet_NaN();
    ppe.var_mc = chi2.mean;
    ppe.var_mc_se = chi2.se;
    ppe.risk_mc = risk.mean;
    ppe.risk_se = risk.se;
    ppe.vhat_mean = ppe.vhat_se = ppe.vhat_target = std::numeric_limits<double>::quiet_NaN();
    return table;
}

LogLogFit fit_log_log(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw std::invalid_argument("log-log fit needs matching vectors with at least 2 points");
    }
    const std::size_t n = xs.size();
    std::vector<double> u(n);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) {
            throw std::invalid_argument("log-log fit needs positive values");
        }
        u[i] = std::log(xs[i]);
        v[i] = std::log(ys[i]);
    }
    double mu = 0.0;
    double mv = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mu += u[i];
        mv += v[i];
    }
    mu /= static_cast<double>(n);
    mv /= static_cast<double>(n);
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (u[i] - mu) * (u[i] - mu);
        sxy += (u[i] - mu) * (v[i] - mv);
    }
    if (!(sxx > 0.0)) {
        throw std::invalid_argument("log-log fit needs distinct x values");
    }
    LogLogFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = mv - fit.slope * mu;
    if (n > 2) {
        double rss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = v[i] - fit.intercept - fit.slope * u[i];
            rss += r * r;
        }
        fit.slope_se = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
    } else {
        fit.slope_se = std::numeric_limits<double>::quiet_NaN();
    }
    return fit;
}

RateReport rate_experiment(const ExperimentConfig& config, const std::vector<double>& horizons) {
    if (horizons.size() < 4) {
        throw std::invalid_argument("rate experiment needs at least 4 horizons");
    }
    for (std::size_t i = 1; i < horizons.size(); ++i) {
        if (!(horizons[i] > horizons[i - 1])) {
            throw std::invalid_argument("rate experiment horizons must increase");
        }
    }
    RateReport report;
    std::vector<double> ts;
    std::vector<double> risks;
    for (double horizon : horizons) {
        ExperimentConfig c = config;
        c.horizon = horizon;
        c.per_model = false;
        c.collection.kind = CollectionSpec::Kind::Regular;
        c.collection.m_min = 1;
        c.collection.m_max = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::floor(horizon * config.window.width() + 1e-9)));
        const RiskTable table = mc_risk(c);
        report.points.push_back({horizon, table.ppe.risk_mc, table.ppe.risk_se, c.collection.m_max});
        ts.push_back(horizon);
        risks.push_back(table.ppe.risk_mc);
    }
    report.fit = fit_log_log(ts, risks);
    return report;
}

std::vector<SweepRow> approx_bias_sweep(const ProcessSpec& process, const IntegrandSpec& f, double horizon,
                                        const std::vector<std::size_t>& n_grid, std::size_t replications,
                                        std::uint64_t master_seed, unsigned threads) {
    validate(process);
    if (!f.admissible()) {
        throw std::invalid_argument("integrand must vanish near 0 or be o(x^2) there");
    }
    if (replications < 2 || n_grid.empty()) {
        throw std::invalid_argument("sweep needs at least 2 replications and one n");
    }
    for (std::size_t j = 1; j < n_grid.size(); ++j) {
        if (!(n_grid[j] > n_grid[j - 1])) {
            throw std::invalid_argument("sweep n grid must increase");
        }
    }
    if (!std::isfinite(f.support_lo) || !std::isfinite(f.support_hi) ||
        (f.support_lo < 0.0 && f.support_hi > 0.0)) {
        throw std::invalid_argument("sweep targets need a finite integrand support on one side of 0");
    }
    double target_mean = 0.0;
    double target_var = 0.0;
    if (f.support_hi > f.support_lo) {
        target_mean = horizon * integrate([&](double x) { return f(x) * levy_density(process, x); }, f.support_lo,
                                          f.support_hi);
        target_var = horizon * integrate([&](double x) {
                         const double v = f(x);
                         return v * v * levy_density(process, x);
                     },
                                         f.support_lo, f.support_hi);
    }
    std::vector<std::vector<double>> values(n_grid.size(), std::vector<double>(replications));
    parallel_for(replications, threads, [&](std::size_t r) {
        const RngStream base(master_seed, r);
        for (std::size_t j = 0; j < n_grid.size(); ++j) {
            const IncrementSeries inc = simulate_increments(process, horizon, n_grid[j], base.child(j));
            values[j][r] = poisson_integral_approx(inc, f);
        }
    });
    std::vector<SweepRow> rows;
    for (std::size_t j = 0; j < n_grid.size(); ++j) {
        const MeanSe s = summarize(values[j]);
        rows.push_back({n_grid[j], s.mean, s.se, target_mean, s.variance, target_var});
    }
    return rows;
}

std::vector<AlphaRow> regularized_alpha_check(const GammaParams& params, double horizon,
                                              const std::vector<double>& x1_grid, std::size_t replications,
                                              std::uint64_t master_seed, std::size_t n_terms, unsigned threads) {
    params.validate();
    if (x1_grid.empty() || replications < 2) {
        throw std::invalid_argument("alpha check needs x1 values and at least 2 replications");
    }
    for (double x1 : x1_grid) {
        if (!(x1 > 0.0 && x1 < params.beta)) {
            throw std::invalid_argument("x1 values must lie in (0, beta)");
        }
    }
    const double x1_min = *std::min_element(x1_grid.begin(), x1_grid.end());
    const std::size_t terms =
        n_terms > 0 ? n_terms : gamma_series_terms_for_mass(params, horizon, 1e-9 * params.alpha * horizon * x1_min);
    std::vector<LinearModel> models;
    for (double x1 : x1_grid) {
        models.push_back(build_model({0.0, x1}, ReferenceMeasure::inverse_square(),
                                     BasisSpec::regularized({0.0, x1})));
    }
    std::vector<std::vector<double>> values(x1_grid.size(), std::vector<double>(replications));
    parallel_for(replications, threads, [&](std::size_t r) {
        const JumpSet jumps = simulate_gamma_jumps(params, horizon, terms, RngStream(master_seed, r));
        const std::vector<double> sizes = jumps.sizes();
        for (std::size_t j = 0; j < x1_grid.size(); ++j) {
            const ProjectionEstimate est = project(sizes, horizon, models[j]);
            values[j][r] = est.coefficients[0] / std::sqrt(x1_grid[j]);
        }
    });
    std::vector<AlphaRow> rows;
    for (std::size_t j = 0; j < x1_grid.size(); ++j) {
        const double x1 = x1_grid[j];
        const double u = x1 / params.beta;
        const MeanSe s = summarize(values[j]);
        AlphaRow row;
        row.x1 = x1;
        row.mean = s.mean;
        row.mean_se = s.se;
        row.mean_exact = params.alpha * params.beta * -std::expm1(-u) / x1;
        row.variance = s.variance;
        row.variance_limit = params.alpha / (2.0 * horizon);
        row.variance_exact = params.alpha / (horizon * x1 * x1) * params.beta * params.beta *
                             (-std::expm1(-u) - u * std::exp(-u));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace levy
