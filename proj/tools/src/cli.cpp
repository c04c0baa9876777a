#include "levy_cli/cli.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "levy/discrete.hpp"
#include "levy/errors.hpp"
#include "levy/fitting.hpp"
#include "levy/io.hpp"
#include "levy_cli/checks.hpp"
#include "levy_cli/manifest.hpp"
#include "levy_cli/parse.hpp"
#include "levy_cli/table1.hpp"

namespace levy::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr const char* kSeedEnv = "LEVY_CALIB_SEED";

std::uint64_t parse_seed(std::string_view text) {
    std::uint64_t value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc() || ptr != end) {
        throw UsageError("seed must be a non-negative 64-bit integer, got '" + std::string(text) + "'");
    }
    return value;
}

/// Flags that were given on the command line overwrite config keys.
class Bindings {
public:
    template <class T>
    CLI::Option* add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
        auto storage = std::make_shared<T>();
        CLI::Option* opt = app->add_option(flag, *storage, help);
        apply_.push_back([opt, storage, key](json& cfg) {
            if (opt->count() > 0) {
                cfg[key] = *storage;
            }
        });
        return opt;
    }

    void apply(json& cfg) const {
        for (const auto& f : apply_) {
            f(cfg);
        }
    }

private:
    std::vector<std::function<void(json&)>> apply_;
};

struct Shared {
    std::string config_path;
    std::string out_dir = ".";
    unsigned threads = 0;
};

void add_shared(CLI::App* sub, Shared& shared, bool threads) {
    sub->add_option("--config", shared.config_path, "JSON config or a previous manifest.json");
    sub->add_option("--out", shared.out_dir, "Output directory (created if missing)");
    if (threads) {
        sub->add_option("--threads", shared.threads, "Worker threads, 0 = all cores; results do not depend on it");
    }
}

/// defaults < LEVY_CALIB_SEED (seed only) < config file < flags
json resolve(const std::string& command, json cfg, const Shared& shared, const Bindings& flags) {
    if (cfg.contains("seed")) {
        if (const char* env = std::getenv(kSeedEnv); env != nullptr && *env != '\0') {
            cfg["seed"] = parse_seed(env);
        }
    }
    if (!shared.config_path.empty()) {
        const json file = load_config_file(shared.config_path, command);
        for (const auto& [key, value] : file.items()) {
            if (!cfg.contains(key)) {
                throw UsageError("unknown config key '" + key + "' for " + command);
            }
            cfg[key] = value;
        }
    }
    flags.apply(cfg);
    return cfg;
}

template <class T>
T get(const json& cfg, const std::string& key) {
    try {
        return cfg.at(key).get<T>();
    } catch (const json::exception&) {
        throw UsageError("config key '" + key + "' has the wrong type");
    }
}

double get_double(const json& cfg, const std::string& key) {
    if (!cfg.at(key).is_number()) {
        throw UsageError("config key '" + key + "' must be a number");
    }
    return cfg.at(key).get<double>();
}

std::size_t get_count(const json& cfg, const std::string& key) {
    const json& v = cfg.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw UsageError("config key '" + key + "' must be a non-negative integer");
    }
    return v.get<std::size_t>();
}

std::uint64_t get_seed(const json& cfg) {
    const json& v = cfg.at("seed");
    if (v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0)) {
        return v.get<std::uint64_t>();
    }
    if (v.is_string()) {
        return parse_seed(v.get<std::string>());
    }
    throw UsageError("config key 'seed' must be a non-negative integer");
}

std::vector<double> get_list(const json& cfg, const std::string& key) {
    const json& v = cfg.at(key);
    if (!v.is_array()) {
        throw UsageError("config key '" + key + "' must be an array of numbers");
    }
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number()) {
            throw UsageError("config key '" + key + "' must be an array of numbers");
        }
        out.push_back(x.get<double>());
    }
    return out;
}

Window get_window(const json& cfg, const std::string& key) {
    const auto w = get_list(cfg, key);
    if (w.size() != 2 || !(w[0] < w[1])) {
        throw UsageError("'" + key + "' needs two increasing values lo hi");
    }
    return {w[0], w[1]};
}

std::string utc_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Output directory with the list of files written so far.
class Outputs {
public:
    Outputs(const std::string& command, const Shared& shared)
        : dir_(shared.out_dir), start_(std::chrono::steady_clock::now()), started_at_(utc_now()) {
        manifest_.command = command;
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec) {
            throw DataError("cannot create output directory " + dir_.string() + ": " + ec.message());
        }
    }

    template <class Writer>
    void write(const std::string& name, Writer&& writer) {
        const fs::path path = dir_ / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw DataError("cannot write " + path.string());
        }
        writer(out);
        out.flush();
        if (!out) {
            throw DataError("write failed: " + path.string());
        }
        manifest_.outputs.push_back(name);
    }

    const fs::path& dir() const { return dir_; }

    void finish(const json& config, std::optional<std::uint64_t> seed) {
        manifest_.config = config;
        manifest_.seed = seed;
        manifest_.version = tool_version();
        manifest_.started_at = started_at_;
        manifest_.wall_clock_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        write_manifest(dir_, manifest_);
    }

private:
    fs::path dir_;
    std::chrono::steady_clock::time_point start_;
    std::string started_at_;
    RunManifest manifest_;
};

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot read " + path);
    }
    return in;
}

// simulate ------------------------------------------------------------------

json simulate_defaults() {
    return {{"process", "gamma"}, {"alpha", 1.0}, {"beta", 1.0},   {"theta", 0.0},
            {"sigma", 1.0},       {"nu", 1.0},    {"cuts", {0.1, 0.55, 1.0}}, {"rates", {3.0, 1.0}},
            {"T", 365.0},         {"jumps", 2000}, {"steps", 0},   {"increments_from", "exact"},
            {"seed", 1}};
}

ProcessSpec process_from(const json& cfg) {
    const auto kind = get<std::string>(cfg, "process");
    ProcessSpec spec;
    if (kind == "gamma") {
        spec = GammaParams{get_double(cfg, "alpha"), get_double(cfg, "beta")};
    } else if (kind == "vg") {
        spec = VGParams{get_double(cfg, "theta"), get_double(cfg, "sigma"), get_double(cfg, "nu")};
    } else if (kind == "piecewise") {
        spec = PiecewiseConstantLevy{get_list(cfg, "cuts"), get_list(cfg, "rates")};
    } else {
        throw UsageError("unknown process '" + kind + "' (gamma, vg or piecewise)");
    }
    validate(spec);
    return spec;
}

/// Drops the parameters of the process kinds not in use.
json prune_process(json cfg) {
    const auto kind = cfg["process"].get<std::string>();
    const std::vector<std::pair<std::string, std::vector<std::string>>> owned{
        {"gamma", {"alpha", "beta"}}, {"vg", {"theta", "sigma", "nu"}}, {"piecewise", {"cuts", "rates"}}};
    for (const auto& [k, keys] : owned) {
        if (k != kind) {
            for (const auto& key : keys) {
                cfg.erase(key);
            }
        }
    }
    return cfg;
}

int cmd_simulate(const json& cfg_in, const Shared& shared, std::ostream& out) {
    const json cfg = prune_process(cfg_in);
    const ProcessSpec spec = process_from(cfg);
    const double horizon = get_double(cfg, "T");
    const std::size_t terms = get_count(cfg, "jumps");
    const std::size_t steps = get_count(cfg, "steps");
    const auto source = get<std::string>(cfg, "increments_from");
    const std::uint64_t seed = get_seed(cfg);
    if (source != "exact" && source != "jumps") {
        throw UsageError("increments_from must be 'exact' or 'jumps'");
    }
    const RngStream rng(seed, 0);

    Outputs outputs("simulate", shared);
    if (steps == 0 || source == "jumps") {
        const JumpSet jumps = simulate_jumps(spec, horizon, terms, rng);
        outputs.write("jumps.csv", [&](std::ostream& o) { io::write_jumps_csv(o, jumps); });
        out << "jumps.csv: " << jumps.jumps.size() << " jumps of " << describe(spec) << " on [0, "
            << io::format_double(horizon) << "]\n";
        if (steps > 0) {
            const IncrementSeries inc = jumps_to_increments(jumps, steps);
            outputs.write("increments.csv", [&](std::ostream& o) { io::write_increments_csv(o, inc); });
            out << "increments.csv: " << inc.steps() << " increments binned from the jumps\n";
        }
    } else {
        const IncrementSeries inc = simulate_increments(spec, horizon, steps, rng);
        outputs.write("increments.csv", [&](std::ostream& o) { io::write_increments_csv(o, inc); });
        out << "increments.csv: " << inc.steps() << " increments of " << describe(spec) << ", step "
            << io::format_double(inc.step()) << '\n';
    }
    outputs.finish(cfg, seed);
    return kOk;
}

// estimate ------------------------------------------------------------------

json estimate_defaults() {
    return {{"jumps", ""},          {"increments", ""},  {"T", 365.0},        {"window", {0.1, 1.0}},
            {"family", "auto"},     {"pen", "b:2"},      {"measure", "lebesgue"}, {"truth", ""},
            {"overlay_points", 400}};
}

void write_overlay(Outputs& outputs, const ProjectionEstimate& estimate, const ProcessSpec& truth, std::size_t n) {
    if (n == 0) {
        throw UsageError("overlay_points must be positive");
    }
    const DensitySpec density = truth_density(truth, estimate.model.measure());
    const Window w = estimate.model.window();
    outputs.write("overlay.csv", [&](std::ostream& o) {
        o << "x,estimate,truth\n";
        for (std::size_t k = 0; k < n; ++k) {
            // cell midpoints keep x = 0 out of the grid
            const double x = w.lo + (static_cast<double>(k) + 0.5) * w.width() / static_cast<double>(n);
            o << io::format_double(x) << ',' << io::format_double(estimate(x)) << ','
              << io::format_double(density.value(x)) << '\n';
        }
    });
    outputs.write("overlay.gp", [&](std::ostream& o) {
        o << "set datafile separator ','\n"
          << "set xlabel 'x'\n"
          << "set ylabel 'density w.r.t. " << estimate.model.measure().name() << "'\n"
          << "plot 'overlay.csv' every ::1 using 1:2 with lines title 'estimate', \\\n"
          << "     '' every ::1 using 1:3 with lines title '" << describe(truth) << "'\n";
    });
}

int cmd_estimate(json cfg, const Shared& shared, std::ostream& out) {
    const auto jumps_path = get<std::string>(cfg, "jumps");
    const auto inc_path = get<std::string>(cfg, "increments");
    if (jumps_path.empty() == inc_path.empty()) {
        throw UsageError("estimate needs exactly one of --jumps or --increments");
    }
    const Window window = get_window(cfg, "window");
    const ReferenceMeasure measure = parse_measure(get<std::string>(cfg, "measure"));
    const PenaltyForm pen = parse_penalty(get<std::string>(cfg, "pen"));
    const auto truth_text = get<std::string>(cfg, "truth");
    const std::optional<ProcessSpec> truth =
        truth_text.empty() ? std::nullopt : std::optional<ProcessSpec>(parse_process(truth_text));

    std::optional<JumpSet> jumps;
    std::optional<IncrementSeries> increments;
    double horizon = 0.0;
    if (!jumps_path.empty()) {
        horizon = get_double(cfg, "T");
        auto in = open_input(jumps_path);
        jumps = io::read_jumps_csv(in, horizon);
        cfg.erase("increments");
    } else {
        auto in = open_input(inc_path);
        increments = io::read_increments_csv(in);
        horizon = increments->horizon;
        cfg.erase("jumps");
        cfg.erase("T");
    }

    CollectionSpec family;
    const auto family_text = get<std::string>(cfg, "family");
    if (family_text == "auto") {
        // largest regular partition with D_m = m / (b - a) <= T
        family.m_max = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(horizon * window.width())));
    } else {
        family = parse_family(family_text);
    }
    cfg["family"] = format_family(family);
    const ModelCollection collection = family.build(window, measure);

    if (!jumps && pen.kind != PenaltyForm::Kind::B) {
        throw UsageError("increment data supports the penalty b:c only");
    }
    const SelectionResult sel =
        jumps ? select(*jumps, collection, pen) : approx_select(*increments, collection, pen.c);

    Outputs outputs("estimate", shared);
    outputs.write("estimate.csv", [&](std::ostream& o) { io::write_estimate_csv(o, sel.estimate); });
    outputs.write("selection.csv", [&](std::ostream& o) { io::write_selection_csv(o, sel, collection); });
    if (truth) {
        write_overlay(outputs, sel.estimate, *truth, get_count(cfg, "overlay_points"));
    }
    const LinearModel& chosen = sel.estimate.model;
    out << "chosen model: " << format_family({family.kind, chosen.dim(), chosen.dim()}) << " (d_m "
        << chosen.dim() << ", D_m " << io::format_double(chosen.sup_constant()) << ") among "
        << sel.table.size() << " models, penalty " << pen.label() << '\n';
    if (sel.outside_proven_scope) {
        out << "note: some models lie outside the small-time approximation's proven scope\n";
    }
    outputs.finish(cfg, std::nullopt);
    return kOk;
}

// fit -----------------------------------------------------------------------

json fit_defaults() {
    return {{"method", "lse-log"}, {"estimate", ""},          {"measure", "lebesgue"}, {"increments", ""},
            {"init", {1.0, 1.0}},  {"window", {0.002, 0.02}}, {"bins", 10}};
}

template <class Params>
json report_json(const FitReport<Params>& r, json params) {
    return {{"method", r.method},
            {"params", std::move(params)},
            {"objective", r.objective},
            {"n_points_used", r.n_points_used},
            {"dropped", r.dropped},
            {"converged", r.converged},
            {"iterations", r.iterations}};
}

json gamma_json(const GammaParams& p) { return {{"alpha", p.alpha}, {"beta", p.beta}}; }
json vg_json(const VGParams& p) { return {{"theta", p.theta}, {"sigma", p.sigma}, {"nu", p.nu}}; }
json pair_json(const GammaPair& p) {
    return {{"alpha", p.alpha}, {"beta_plus", p.beta_plus}, {"beta_minus", p.beta_minus}};
}

int cmd_fit(json cfg, const Shared& shared, std::ostream& out) {
    const auto method = get<std::string>(cfg, "method");
    const bool from_estimate = method == "lse-log" || method == "lse-direct";
    const bool from_increments = method == "mle" || method == "mom-vg" || method == "lse-vg-tails";
    if (!from_estimate && !from_increments) {
        throw UsageError("unknown fit method '" + method + "' (lse-log, lse-direct, mle, mom-vg, lse-vg-tails)");
    }
    // keep only the keys the method reads
    const std::vector<std::string> keep =
        from_estimate ? std::vector<std::string>{"method", "estimate", "measure", "init"}
                      : std::vector<std::string>{"method", "increments", "window", "bins"};
    for (auto it = cfg.begin(); it != cfg.end();) {
        if (std::find(keep.begin(), keep.end(), it.key()) == keep.end()) {
            it = cfg.erase(it);
        } else {
            ++it;
        }
    }
    if (method == "lse-log") {
        cfg.erase("init");
    }
    if (method != "lse-vg-tails" && from_increments) {
        cfg.erase("window");
        cfg.erase("bins");
    }

    json result;
    if (from_estimate) {
        const auto path = get<std::string>(cfg, "estimate");
        if (path.empty()) {
            throw UsageError(method + " needs --estimate");
        }
        const ReferenceMeasure measure = parse_measure(get<std::string>(cfg, "measure"));
        auto in = open_input(path);
        std::vector<double> xs;
        std::vector<double> values;
        for (const auto& row : io::read_estimate_csv(in)) {
            const double mid = 0.5 * (row.x_left + row.x_right);
            xs.push_back(mid);
            values.push_back(row.value_at_mid * measure.density(mid));
        }
        if (method == "lse-log") {
            const auto r = lse_gamma_log_points(xs, values);
            result = report_json(r, gamma_json(r.params));
        } else {
            const auto init = get_list(cfg, "init");
            if (init.size() != 2) {
                throw UsageError("init needs two values alpha beta");
            }
            const auto r = lse_gamma_direct_points(xs, values, GammaParams{init[0], init[1]});
            result = report_json(r, gamma_json(r.params));
        }
    } else {
        const auto path = get<std::string>(cfg, "increments");
        if (path.empty()) {
            throw UsageError(method + " needs --increments");
        }
        auto in = open_input(path);
        const IncrementSeries inc = io::read_increments_csv(in);
        if (method == "mle") {
            const auto r = mle_gamma(inc);
            result = report_json(r, gamma_json(r.params));
        } else if (method == "mom-vg") {
            const auto r = mom_vg(inc);
            result = report_json(r, vg_json(r.params));
            result["gamma_pair"] = pair_json(vg_to_gamma_pair(r.params));
        } else {
            const Window w = get_window(cfg, "window");
            if (w.lo <= 0.0) {
                throw UsageError("lse-vg-tails window must lie in x > 0; the left tail mirrors it");
            }
            const std::size_t bins = get_count(cfg, "bins");
            const auto measure = ReferenceMeasure::lebesgue();
            const auto right_model = build_model(w, measure, BasisSpec::regular(bins));
            const auto left_model = build_model({-w.hi, -w.lo}, measure, BasisSpec::regular(bins));
            const auto fit = lse_vg_tails(approx_project(inc, left_model), approx_project(inc, right_model),
                                          FitGrid::midpoints(left_model), FitGrid::midpoints(right_model));
            result = report_json(fit.vg, vg_json(fit.vg.params));
            result["gamma_pair"] = pair_json(fit.pair);
        }
    }

    Outputs outputs("fit", shared);
    outputs.write("fit.json", [&](std::ostream& o) { o << result.dump(2) << '\n'; });
    out << method << ": " << result["params"].dump() << (result["converged"].get<bool>() ? "" : " (not converged)")
        << '\n';
    outputs.finish(cfg, std::nullopt);
    return kOk;
}

// table1 --------------------------------------------------------------------

json table1_defaults() {
    const Table1Config d;
    return {{"alpha", d.params.alpha}, {"beta", d.params.beta},     {"T", d.horizon},
            {"dts", d.dts},            {"reps", d.replications},    {"mode", "both"},
            {"jump_terms", d.jump_terms}, {"window", {d.window.lo, d.window.hi}},
            {"family", format_family(d.family)}, {"pen_c", d.pen_c}, {"seed", d.master_seed}};
}

int cmd_table1(const json& cfg, const Shared& shared, std::ostream& out) {
    Table1Config c;
    c.params = {get_double(cfg, "alpha"), get_double(cfg, "beta")};
    c.horizon = get_double(cfg, "T");
    c.dts = get_list(cfg, "dts");
    c.replications = get_count(cfg, "reps");
    const auto mode = get<std::string>(cfg, "mode");
    if (mode != "both" && mode != "jump" && mode != "increment") {
        throw UsageError("mode must be both, jump or increment");
    }
    c.jump_mode = mode != "increment";
    c.increment_mode = mode != "jump";
    c.jump_terms = get_count(cfg, "jump_terms");
    c.window = get_window(cfg, "window");
    c.family = parse_family(get<std::string>(cfg, "family"));
    c.pen_c = get_double(cfg, "pen_c");
    c.master_seed = get_seed(cfg);
    c.threads = shared.threads;

    const auto rows = run_table1(c);
    Outputs outputs("table1", shared);
    outputs.write("table1.csv", [&](std::ostream& o) { write_table1_csv(o, rows, c); });
    out << "dt,mode,ppe_lse_alpha,ppe_lse_beta,mle_alpha,mle_beta (medians)\n";
    for (const auto& r : rows) {
        out << io::format_double(r.dt) << ',' << r.mode << ',' << io::format_double(r.lse_alpha.median) << ','
            << io::format_double(r.lse_beta.median) << ',' << io::format_double(r.mle_alpha.median) << ','
            << io::format_double(r.mle_beta.median) << '\n';
    }
    outputs.finish(cfg, c.master_seed);
    return kOk;
}

// verify --------------------------------------------------------------------

json verify_defaults() { return {{"check", ""}, {"reps", 0}, {"seed", 1}}; }

int cmd_verify(const json& cfg, const Shared& shared, std::ostream& out) {
    CheckOptions options;
    options.seed = get_seed(cfg);
    options.replications = get_count(cfg, "reps");
    options.threads = shared.threads;
    const auto name = get<std::string>(cfg, "check");
    if (name.empty()) {
        throw UsageError("verify needs a check name");
    }
    const CheckReport report = run_check(name, options);
    Outputs outputs("verify", shared);
    outputs.write(name + ".csv", [&](std::ostream& o) { o << report.table_csv; });
    for (const auto& o : report.outcomes) {
        out << (o.passed ? "PASS " : "FAIL ") << o.name << ": " << o.summary << '\n';
    }
    outputs.finish(cfg, options.seed);
    return report.passed() ? kOk : kCheckFailed;
}

int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Levy density estimation from jumps or increments, with Monte Carlo checks", "levy-calib"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version());

    Shared shared;
    Bindings sim_flags;
    Bindings est_flags;
    Bindings fit_flags;
    Bindings t1_flags;
    Bindings ver_flags;

    auto* sim = app.add_subcommand("simulate", "Simulate jumps (series representation) or an increment skeleton");
    add_shared(sim, shared, false);
    sim_flags.add<std::string>(sim, "process", "process", "gamma, vg or piecewise");
    sim_flags.add<double>(sim, "--alpha", "alpha", "Gamma activity");
    sim_flags.add<double>(sim, "--beta", "beta", "Gamma scale");
    sim_flags.add<double>(sim, "--theta", "theta", "VG drift of the subordinated Brownian motion");
    sim_flags.add<double>(sim, "--sigma", "sigma", "VG volatility");
    sim_flags.add<double>(sim, "--nu", "nu", "VG variance rate of the Gamma clock");
    sim_flags.add<std::vector<double>>(sim, "--cuts", "cuts", "Piecewise process bin edges")->delimiter(',');
    sim_flags.add<std::vector<double>>(sim, "--rates", "rates", "Piecewise process Levy density per bin")
        ->delimiter(',');
    sim_flags.add<double>(sim, "--T", "T", "Horizon");
    sim_flags.add<std::size_t>(sim, "--jumps", "jumps", "Series terms per Gamma component");
    sim_flags.add<std::size_t>(sim, "--steps", "steps", "Increments to write; 0 writes jumps only");
    sim_flags.add<std::string>(sim, "--increments-from", "increments_from",
                               "exact (skeleton) or jumps (binned series path, both files written)");
    sim_flags.add<std::uint64_t>(sim, "--seed", "seed", "Master seed");

    auto* est = app.add_subcommand("estimate", "Penalized projection estimate of the Levy density");
    add_shared(est, shared, false);
    est_flags.add<std::string>(est, "--jumps", "jumps", "jumps.csv input");
    est_flags.add<std::string>(est, "--increments", "increments", "increments.csv input (increment-based estimator)");
    est_flags.add<double>(est, "--T", "T", "Horizon of the jumps input");
    est_flags.add<std::vector<double>>(est, "--window", "window", "Estimation window lo hi")->expected(2);
    est_flags.add<std::string>(est, "--family", "family", "auto, regular:m1..m2 or regularized:m1..m2");
    est_flags.add<std::string>(est, "--pen", "pen", "a:c,c1 | b:c | c:c,c1,c2");
    est_flags.add<std::string>(est, "--measure", "measure", "lebesgue or inv-square");
    est_flags.add<std::string>(est, "--truth", "truth", "gamma:a,b | vg:th,s,nu | piecewise:cuts:rates for overlay.csv");
    est_flags.add<std::size_t>(est, "--overlay-points", "overlay_points", "Grid size of overlay.csv");

    auto* fit = app.add_subcommand("fit", "Parametric fits on estimates or increments");
    add_shared(fit, shared, false);
    fit_flags.add<std::string>(fit, "--method", "method", "lse-log, lse-direct, mle, mom-vg or lse-vg-tails");
    fit_flags.add<std::string>(fit, "--estimate", "estimate", "estimate.csv for lse-log and lse-direct");
    fit_flags.add<std::string>(fit, "--measure", "measure", "Reference measure of the estimate");
    fit_flags.add<std::string>(fit, "--increments", "increments", "increments.csv for mle, mom-vg, lse-vg-tails");
    fit_flags.add<std::vector<double>>(fit, "--init", "init", "lse-direct start alpha beta")->expected(2);
    fit_flags.add<std::vector<double>>(fit, "--window", "window", "lse-vg-tails positive tail window lo hi")
        ->expected(2);
    fit_flags.add<std::size_t>(fit, "--bins", "bins", "lse-vg-tails bins per tail");

    auto* t1 = app.add_subcommand("table1", "Gamma calibration table: PPE-LSE and MLE over replications");
    add_shared(t1, shared, true);
    t1_flags.add<double>(t1, "--alpha", "alpha", "Gamma activity");
    t1_flags.add<double>(t1, "--beta", "beta", "Gamma scale");
    t1_flags.add<double>(t1, "--T", "T", "Horizon");
    t1_flags.add<std::vector<double>>(t1, "--dts", "dts", "Time steps, comma separated")->delimiter(',');
    t1_flags.add<std::size_t>(t1, "--reps", "reps", "Replications");
    t1_flags.add<std::string>(t1, "--mode", "mode", "both, jump or increment");
    t1_flags.add<std::size_t>(t1, "--jump-terms", "jump_terms", "Series terms of the jump-based paths");
    t1_flags.add<std::vector<double>>(t1, "--window", "window", "Estimation window lo hi")->expected(2);
    t1_flags.add<std::string>(t1, "--family", "family", "Model family");
    t1_flags.add<double>(t1, "--pen-c", "pen_c", "Penalty constant");
    t1_flags.add<std::uint64_t>(t1, "--seed", "seed", "Master seed");

    auto* ver = app.add_subcommand("verify", "Run a named Monte Carlo check; exit 1 when its band fails");
    add_shared(ver, shared, true);
    std::string names;
    for (const auto& n : check_names()) {
        names += (names.empty() ? "" : ", ") + n;
    }
    ver_flags.add<std::string>(ver, "check", "check", "One of " + names);
    ver_flags.add<std::size_t>(ver, "--reps", "reps", "Replications, 0 = the check's default");
    ver_flags.add<std::uint64_t>(ver, "--seed", "seed", "Master seed");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    if (sim->parsed()) {
        return cmd_simulate(resolve("simulate", simulate_defaults(), shared, sim_flags), shared, out);
    }
    if (est->parsed()) {
        return cmd_estimate(resolve("estimate", estimate_defaults(), shared, est_flags), shared, out);
    }
    if (fit->parsed()) {
        return cmd_fit(resolve("fit", fit_defaults(), shared, fit_flags), shared, out);
    }
    if (t1->parsed()) {
        return cmd_table1(resolve("table1", table1_defaults(), shared, t1_flags), shared, out);
    }
    return cmd_verify(resolve("verify", verify_defaults(), shared, ver_flags), shared, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(args, out, err);
    } catch (const std::invalid_argument& e) {
        err << "levy-calib: usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const json::exception& e) {
        err << "levy-calib: usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "levy-calib: error: " << e.what() << '\n';
        return kDataError;
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return run(args, out, err);
}

}  // namespace levy::cli
