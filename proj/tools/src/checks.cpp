#include "levy_cli/checks.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "levy/discrete.hpp"
#include "levy/evaluation.hpp"
#include "levy/fitting.hpp"
#include "levy/io.hpp"
#include "levy_cli/parse.hpp"
#include "levy_cli/table1.hpp"

namespace levy::cli {

namespace {

using io::format_double;

std::size_t reps_or(const CheckOptions& o, std::size_t fallback) {
    return o.replications > 0 ? o.replications : fallback;
}

ExperimentConfig benchmark(const CheckOptions& o, std::size_t reps) {
    ExperimentConfig c;
    c.replications = reps;
    c.master_seed = o.seed;
    c.threads = o.threads;
    return c;
}

double round_sig(double x, int digits) {
    if (x == 0.0) {
        return 0.0;
    }
    const double scale = std::pow(10.0, digits - 1 - static_cast<int>(std::floor(std::log10(std::abs(x)))));
    return std::round(x * scale) / scale;
}

}  // namespace

bool CheckReport::passed() const {
    for (const auto& o : outcomes) {
        if (!o.passed) {
            return false;
        }
    }
    return !outcomes.empty();
}

const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names{"variance-term", "oracle",           "rate",
                                                "approx-bias",   "regularized-alpha", "vg-roundtrip",
                                                "table1-band"};
    return names;
}

CheckReport run_check(const std::string& name, const CheckOptions& options) {
    if (name == "variance-term") {
        return check_variance_term(options);
    }
    if (name == "oracle") {
        return check_oracle(options);
    }
    if (name == "rate") {
        return check_rate(options);
    }
    if (name == "approx-bias") {
        return check_approx_bias(options);
    }
    if (name == "regularized-alpha") {
        return check_regularized_alpha(options);
    }
    if (name == "vg-roundtrip") {
        return check_vg_roundtrip(options);
    }
    if (name == "table1-band") {
        return check_table1_band(options);
    }
    std::string known;
    for (const auto& n : check_names()) {
        known += (known.empty() ? "" : ", ") + n;
    }
    throw UsageError("unknown check '" + name + "' (one of " + known + ")");
}

CheckReport check_variance_term(const CheckOptions& options) {
    ExperimentConfig c = benchmark(options, reps_or(options, 1000));
    c.collection.m_min = 10;
    c.collection.m_max = 10;
    const RiskTable t = mc_risk(c);
    const RiskRow& row = t.models.at(0);

    CheckReport report;
    report.check = "variance-term";
    report.replications = t.replications_ok;
    const double rel = std::abs(row.var_mc - row.var_analytic) / row.var_analytic;
    std::ostringstream s1;
    s1 << "E[chi^2] MC " << format_double(row.var_mc) << " +- " << format_double(row.var_mc_se) << " vs "
       << format_double(row.var_analytic) << " (rel. diff " << format_double(rel) << ", band 0.05)";
    report.outcomes.push_back({"variance-term", rel <= 0.05 && t.replications_failed == 0, s1.str()});

    double worst = 0.0;
    std::ostringstream table;
    table << "i,target,mc_mean,mc_se,z\n";
    for (std::size_t k = 0; k < row.dim; ++k) {
        const double z = (row.coef_mean[k] - row.coef_target[k]) / row.coef_se[k];
        worst = std::max(worst, std::abs(z));
        table << k + 1 << ',' << format_double(row.coef_target[k]) << ',' << format_double(row.coef_mean[k]) << ','
              << format_double(row.coef_se[k]) << ',' << format_double(z) << '\n';
    }
    std::ostringstream s2;
    s2 << "max |z| over " << row.dim << " coefficients " << format_double(worst) << " (band 3)";
    report.outcomes.push_back({"unbiasedness", worst <= 3.0, s2.str()});
    table << "# var_analytic," << format_double(row.var_analytic) << "\n# var_mc," << format_double(row.var_mc)
          << "\n# var_mc_se," << format_double(row.var_mc_se) << '\n';
    report.table_csv = table.str();
    return report;
}

CheckReport check_oracle(const CheckOptions& options) {
    const ExperimentConfig c = benchmark(options, reps_or(options, 500));
    const RiskTable t = mc_risk(c);
    const double best = t.min_model_risk();
    const double bound = 3.0 * best + 50.0 / c.horizon;
    CheckReport report;
    report.check = "oracle";
    report.replications = t.replications_ok;
    std::ostringstream s;
    s << "risk(PPE) " << format_double(t.ppe.risk_mc) << " +- " << format_double(t.ppe.risk_se) << " vs 3 min risk + 50/T = "
      << format_double(bound) << " (min risk " << format_double(best) << ")";
    report.outcomes.push_back({"oracle", t.ppe.risk_mc <= bound && t.replications_failed == 0, s.str()});
    std::ostringstream table;
    io::write_risk_csv(table, t);
    report.table_csv = table.str();
    return report;
}

CheckReport check_rate(const CheckOptions& options) {
    const ExperimentConfig c = benchmark(options, reps_or(options, 200));
    const RateReport r = rate_experiment(c, {100, 200, 400, 800, 1600});
    CheckReport report;
    report.check = "rate";
    report.replications = c.replications;
    std::ostringstream s;
    s << "log-log slope " << format_double(r.fit.slope) << " (SE " << format_double(r.fit.slope_se)
      << ", band <= -0.55)";
    report.outcomes.push_back({"rate", r.fit.slope <= -0.55, s.str()});
    std::ostringstream table;
    io::write_rate_csv(table, r);
    report.table_csv = table.str();
    return report;
}

CheckReport check_approx_bias(const CheckOptions& options) {
    const std::size_t reps = reps_or(options, 1000);
    const auto rows = approx_bias_sweep(GammaParams{1.0, 1.0}, IntegrandSpec::indicator(0.5, 1.0), 365.0,
                                        {256, 1024, 4096, 16384}, reps, options.seed, options.threads);
    CheckReport report;
    report.check = "approx-bias";
    report.replications = reps;
    const SweepRow& coarse = rows.front();
    const SweepRow& fine = rows.back();
    std::ostringstream s1;
    s1 << "|bias| at n=16384 " << format_double(std::abs(fine.bias())) << " vs n=256 "
       << format_double(std::abs(coarse.bias()));
    const double rel = std::abs(fine.variance - fine.target_variance) / fine.target_variance;
    std::ostringstream s2;
    s2 << "variance at n=16384 " << format_double(fine.variance) << " vs T int f^2 dnu "
       << format_double(fine.target_variance) << " (rel. diff " << format_double(rel) << ", band 0.1)";
    report.outcomes.push_back({"approx-bias", std::abs(fine.bias()) < std::abs(coarse.bias()), s1.str()});
    report.outcomes.push_back({"approx-variance", rel <= 0.1, s2.str()});
    std::ostringstream table;
    table << "n,mean,mean_se,target_mean,bias,variance,target_variance\n";
    for (const auto& r : rows) {
        table << r.n << ',' << format_double(r.mean) << ',' << format_double(r.mean_se) << ','
              << format_double(r.target_mean) << ',' << format_double(r.bias()) << ',' << format_double(r.variance)
              << ',' << format_double(r.target_variance) << '\n';
    }
    report.table_csv = table.str();
    return report;
}

CheckReport check_regularized_alpha(const CheckOptions& options) {
    const std::size_t reps = reps_or(options, 1000);
    const GammaParams params{1.0, 1.0};
    const auto rows = regularized_alpha_check(params, 365.0, {0.5, 0.2, 0.1, 0.05}, reps, options.seed, 0,
                                              options.threads);
    const AlphaRow& last = rows.back();
    CheckReport report;
    report.check = "regularized-alpha";
    report.replications = reps;
    const double rel = std::abs(last.variance - last.variance_limit) / last.variance_limit;
    std::ostringstream s1;
    s1 << "variance at x1=0.05 " << format_double(last.variance) << " vs alpha/(2T) "
       << format_double(last.variance_limit) << " (rel. diff " << format_double(rel) << ", band 0.2)";
    const double z = (last.mean - params.alpha) / last.mean_se;
    std::ostringstream s2;
    s2 << "mean at x1=0.05 " << format_double(last.mean) << " +- " << format_double(last.mean_se) << ", z = "
       << format_double(z) << " (band 3); exact mean " << format_double(last.mean_exact);
    report.outcomes.push_back({"alpha-variance", rel <= 0.2, s1.str()});
    report.outcomes.push_back({"alpha-mean", std::abs(z) <= 3.0, s2.str()});
    std::ostringstream table;
    table << "x1,mean,mean_se,mean_exact,variance,variance_exact,variance_limit\n";
    for (const auto& r : rows) {
        table << format_double(r.x1) << ',' << format_double(r.mean) << ',' << format_double(r.mean_se) << ','
              << format_double(r.mean_exact) << ',' << format_double(r.variance) << ','
              << format_double(r.variance_exact) << ',' << format_double(r.variance_limit) << '\n';
    }
    report.table_csv = table.str();
    return report;
}

CheckReport check_vg_roundtrip(const CheckOptions& options) {
    CheckReport report;
    report.check = "vg-roundtrip";
    const VGParams market{-0.00056256, std::sqrt(0.01373584), 0.002};
    const GammaPair pair = vg_to_gamma_pair(market);
    const bool digits = round_sig(pair.alpha, 3) == round_sig(500.0, 3) &&
                        round_sig(pair.beta_plus, 3) == round_sig(0.0037056, 3) &&
                        round_sig(pair.beta_minus, 3) == round_sig(0.0037067, 3);
    std::ostringstream s1;
    s1 << "(alpha, beta+, beta-) = (" << format_double(pair.alpha) << ", " << format_double(pair.beta_plus) << ", "
       << format_double(pair.beta_minus) << ") vs (500, 0.0037056, 0.0037067) at 3 significant digits";
    report.outcomes.push_back({"vg-conversion", digits, s1.str()});

    std::mt19937_64 gen(options.seed);
    std::uniform_real_distribution<double> theta(-2.0, 2.0);
    std::uniform_real_distribution<double> positive(0.01, 3.0);
    const std::size_t n = reps_or(options, 10000);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const VGParams p{theta(gen), positive(gen), positive(gen)};
        const VGParams q = gamma_pair_to_vg(vg_to_gamma_pair(p));
        worst = std::max({worst, std::abs(q.theta - p.theta) / std::max(1.0, std::abs(p.theta)),
                          std::abs(q.sigma - p.sigma) / p.sigma, std::abs(q.nu - p.nu) / p.nu});
    }
    std::ostringstream s2;
    s2 << "max relative round-trip error over " << n << " parameter sets " << format_double(worst) << " (band 1e-10)";
    report.outcomes.push_back({"vg-identity", worst <= 1e-10, s2.str()});
    report.replications = n;
    std::ostringstream table;
    table << "quantity,value,reference\nalpha," << format_double(pair.alpha) << ",500\nbeta_plus,"
          << format_double(pair.beta_plus) << ",0.0037056\nbeta_minus," << format_double(pair.beta_minus)
          << ",0.0037067\nmax_roundtrip_error," << format_double(worst) << ",1e-10\n";
    report.table_csv = table.str();
    return report;
}

CheckReport check_table1_band(const CheckOptions& options) {
    Table1Config config;
    config.dts = {0.5, 0.01};
    config.replications = reps_or(options, 50);
    config.master_seed = options.seed;
    config.threads = options.threads;
    const auto rows = run_table1(config);
    auto find = [&](const std::string& mode, double dt) -> const Table1Row& {
        for (const auto& r : rows) {
            if (r.mode == mode && r.dt == dt) {
                return r;
            }
        }
        throw std::logic_error("missing table1 row");
    };
    auto near = [](const Quartiles& q, double target, double tol) { return std::abs(q.median - target) <= tol; };
    const Table1Row& jump = find("jump", 0.5);
    const Table1Row& inc = find("increment", 0.01);
    CheckReport report;
    report.check = "table1-band";
    report.replications = config.replications;
    std::ostringstream s1;
    s1 << "jump dt=0.5 PPE-LSE median (" << format_double(jump.lse_alpha.median) << ", "
       << format_double(jump.lse_beta.median) << ") band 0.25, " << jump.lse_failed << " failed";
    report.outcomes.push_back({"table1-ppe-lse", near(jump.lse_alpha, 1.0, 0.25) && near(jump.lse_beta, 1.0, 0.25),
                               s1.str()});
    std::ostringstream s2;
    s2 << "jump dt=0.5 MLE median (" << format_double(jump.mle_alpha.median) << ", "
       << format_double(jump.mle_beta.median) << ") band 0.1, " << jump.mle_failed << " failed";
    report.outcomes.push_back(
        {"table1-mle-jump", near(jump.mle_alpha, 1.0, 0.1) && near(jump.mle_beta, 1.0, 0.1), s2.str()});
    std::ostringstream s3;
    s3 << "increment dt=0.01 MLE median (" << format_double(inc.mle_alpha.median) << ", "
       << format_double(inc.mle_beta.median) << ") band 0.1, " << inc.mle_failed << " failed";
    report.outcomes.push_back(
        {"table1-mle-increment", near(inc.mle_alpha, 1.0, 0.1) && near(inc.mle_beta, 1.0, 0.1), s3.str()});
    std::ostringstream table;
    write_table1_csv(table, rows, config);
    report.table_csv = table.str();
    return report;
}

}  // namespace levy::cli
