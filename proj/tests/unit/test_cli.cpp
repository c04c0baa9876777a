#ifdef LEVY_HAVE_CLI

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "levy_cli/checks.hpp"
#include "levy_cli/cli.hpp"
#include "levy_cli/manifest.hpp"
#include "levy_cli/parse.hpp"
#include "levy_cli/table1.hpp"

namespace fs = std::filesystem;
using namespace levy;
using namespace levy::cli;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run invoke(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::size_t data_rows(const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#') {
            ++n;
        }
    }
    return n - 1;
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("levy_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        unsetenv("LEVY_CALIB_SEED");
    }
    void TearDown() override {
        fs::remove_all(dir_);
        unsetenv("LEVY_CALIB_SEED");
    }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

}  // namespace

TEST(CliParse, Family) {
    const auto f = parse_family("regular:1..40");
    EXPECT_EQ(f.kind, CollectionSpec::Kind::Regular);
    EXPECT_EQ(f.m_min, 1u);
    EXPECT_EQ(f.m_max, 40u);
    EXPECT_EQ(parse_family("regularized:3").m_min, 3u);
    EXPECT_EQ(parse_family(format_family(f)).m_max, 40u);
    EXPECT_THROW(parse_family("regular"), UsageError);
    EXPECT_THROW(parse_family("fourier:1..3"), UsageError);
    EXPECT_THROW(parse_family("regular:5..2"), UsageError);
}

TEST(CliParse, PenaltyAndMeasure) {
    EXPECT_EQ(parse_penalty("b:2").kind, PenaltyForm::Kind::B);
    EXPECT_EQ(parse_penalty("a:2,3").c1, 3.0);
    EXPECT_EQ(parse_penalty("c:2,2,3").c2, 3.0);
    EXPECT_THROW(parse_penalty("b:0.5"), UsageError);
    EXPECT_THROW(parse_penalty("b:1,2"), UsageError);
    EXPECT_THROW(parse_penalty("d:1"), UsageError);
    EXPECT_EQ(parse_measure("inv-square").kind(), ReferenceMeasure::Kind::InverseSquare);
    EXPECT_THROW(parse_measure("counting"), UsageError);
}

TEST(CliParse, ProcessRoundTrip) {
    for (const char* text : {"gamma:1,2", "vg:-0.1,0.2,0.5", "piecewise:0.1,0.5,1:2,3"}) {
        EXPECT_EQ(format_process(parse_process(format_process(parse_process(text)))),
                  format_process(parse_process(text)));
    }
    EXPECT_EQ(std::get<GammaParams>(parse_process("gamma:0.5,2")).beta, 2.0);
    EXPECT_THROW(parse_process("gamma:1"), UsageError);
    EXPECT_THROW(parse_process("gamma:x,1"), UsageError);
    EXPECT_THROW(parse_process("gamma:-1,1"), std::invalid_argument);
}

TEST(Quartiles, LinearInterpolation) {
    const auto q = quartiles({4.0, 1.0, 3.0, 2.0, 5.0});
    EXPECT_EQ(q.median, 3.0);
    EXPECT_EQ(q.q1, 2.0);
    EXPECT_EQ(q.q3, 4.0);
    EXPECT_EQ(quartiles({1.0, 2.0}).median, 1.5);
    EXPECT_TRUE(std::isnan(quartiles({}).median));
}

TEST_F(CliTest, SimulateGammaJumps) {
    const auto r = invoke({"simulate", "gamma", "--alpha", "1", "--beta", "1", "--T", "365", "--jumps", "2000", "--seed",
                        "7", "--out", path("a")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(data_rows(dir_ / "a" / "jumps.csv"), 2000u);
    const auto manifest = nlohmann::json::parse(slurp(dir_ / "a" / "manifest.json"));
    EXPECT_EQ(manifest["command"], "simulate");
    EXPECT_EQ(manifest["seed"], 7);
    EXPECT_EQ(manifest["outputs"][0]["sha256"], sha256_file(dir_ / "a" / "jumps.csv"));
}

TEST_F(CliTest, SimulateVgSteps) {
    const auto r = invoke({"simulate", "vg", "--theta", "0", "--sigma", "1", "--nu", "1", "--T", "10", "--steps", "1000",
                        "--out", path("v")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(data_rows(dir_ / "v" / "increments.csv"), 1000u);
    EXPECT_FALSE(fs::exists(dir_ / "v" / "jumps.csv"));
}

TEST_F(CliTest, SameSeedSameBytes) {
    for (const char* d : {"a", "b"}) {
        ASSERT_EQ(invoke({"simulate", "gamma", "--seed", "11", "--out", path(d)}).code, 0);
    }
    EXPECT_EQ(sha256_file(dir_ / "a" / "jumps.csv"), sha256_file(dir_ / "b" / "jumps.csv"));
    ASSERT_EQ(invoke({"simulate", "gamma", "--seed", "12", "--out", path("c")}).code, 0);
    EXPECT_NE(sha256_file(dir_ / "a" / "jumps.csv"), sha256_file(dir_ / "c" / "jumps.csv"));
}

TEST_F(CliTest, ManifestRerunReproduces) {
    ASSERT_EQ(invoke({"simulate", "vg", "--nu", "0.5", "--steps", "300", "--T", "3", "--seed", "5", "--out", path("a")})
                  .code,
              0);
    ASSERT_EQ(invoke({"simulate", "--config", path("a/manifest.json"), "--out", path("b")}).code, 0);
    EXPECT_EQ(slurp(dir_ / "a" / "increments.csv"), slurp(dir_ / "b" / "increments.csv"));
    // a flag still beats the manifest
    ASSERT_EQ(invoke({"simulate", "--config", path("a/manifest.json"), "--seed", "6", "--out", path("c")}).code, 0);
    EXPECT_NE(slurp(dir_ / "a" / "increments.csv"), slurp(dir_ / "c" / "increments.csv"));
    // a manifest of another command is refused
    EXPECT_EQ(invoke({"estimate", "--config", path("a/manifest.json")}).code, kUsage);
}

TEST_F(CliTest, SeedPrecedence) {
    setenv("LEVY_CALIB_SEED", "7", 1);
    ASSERT_EQ(invoke({"simulate", "gamma", "--jumps", "50", "--out", path("env")}).code, 0);
    unsetenv("LEVY_CALIB_SEED");
    ASSERT_EQ(invoke({"simulate", "gamma", "--jumps", "50", "--seed", "7", "--out", path("flag")}).code, 0);
    EXPECT_EQ(slurp(dir_ / "env" / "jumps.csv"), slurp(dir_ / "flag" / "jumps.csv"));

    std::ofstream(path("cfg.json")) << R"({"seed": 9, "jumps": 50})";
    setenv("LEVY_CALIB_SEED", "7", 1);
    ASSERT_EQ(invoke({"simulate", "--config", path("cfg.json"), "--out", path("cfg")}).code, 0);
    const auto m = nlohmann::json::parse(slurp(dir_ / "cfg" / "manifest.json"));
    EXPECT_EQ(m["seed"], 9);
    setenv("LEVY_CALIB_SEED", "not-a-seed", 1);
    EXPECT_EQ(invoke({"simulate", "--out", path("bad")}).code, kUsage);
}

TEST_F(CliTest, UsageErrors) {
    EXPECT_EQ(invoke({}).code, kUsage);
    EXPECT_EQ(invoke({"verify", "no-such-check", "--out", path("v")}).code, kUsage);
    EXPECT_EQ(invoke({"simulate", "cauchy", "--out", path("s")}).code, kUsage);
    EXPECT_EQ(invoke({"simulate", "gamma", "--alpha", "-1", "--out", path("s")}).code, kUsage);
    EXPECT_EQ(invoke({"simulate", "--bogus"}).code, kUsage);
    EXPECT_EQ(invoke({"estimate", "--out", path("e")}).code, kUsage);
    std::ofstream(path("cfg.json")) << R"({"no_such_key": 1})";
    EXPECT_EQ(invoke({"simulate", "--config", path("cfg.json")}).code, kUsage);
    EXPECT_EQ(invoke({"--help"}).code, kOk);
}

TEST_F(CliTest, DataErrors) {
    EXPECT_EQ(invoke({"estimate", "--jumps", path("missing.csv"), "--out", path("e")}).code, kDataError);
    std::ofstream(path("bad.csv")) << "time,size\n0.5,abc\n";
    EXPECT_EQ(invoke({"estimate", "--jumps", path("bad.csv"), "--out", path("e")}).code, kDataError);
    // no admissible model: D_m = 1 / 0.9 exceeds T = 1 for every m
    std::ofstream(path("j.csv")) << "time,size\n0.5,0.5\n";
    EXPECT_EQ(invoke({"estimate", "--jumps", path("j.csv"), "--T", "1", "--family", "regular:1..3", "--out", path("e")})
                  .code,
              kDataError);
}

TEST_F(CliTest, EstimateEndToEnd) {
    ASSERT_EQ(invoke({"simulate", "gamma", "--seed", "3", "--out", path("s")}).code, 0);
    const auto r = invoke({"estimate", "--jumps", path("s/jumps.csv"), "--window", "0.1", "1", "--family",
                        "regular:1..40", "--pen", "b:2", "--truth", "gamma:1,1", "--out", path("e")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("chosen model"), std::string::npos);
    std::ifstream sel(dir_ / "e" / "selection.csv");
    std::string line;
    std::getline(sel, line);
    std::size_t chosen = 0;
    std::size_t rows = 0;
    while (std::getline(sel, line)) {
        ++rows;
        chosen += line.back() == '1';
    }
    EXPECT_EQ(rows, 40u);
    EXPECT_EQ(chosen, 1u);
    std::ifstream overlay(dir_ / "e" / "overlay.csv");
    std::getline(overlay, line);
    EXPECT_EQ(line, "x,estimate,truth");
    EXPECT_TRUE(fs::exists(dir_ / "e" / "overlay.gp"));
    EXPECT_EQ(data_rows(dir_ / "e" / "overlay.csv"), 400u);

    const auto f = invoke({"fit", "--method", "lse-log", "--estimate", path("e/estimate.csv"), "--out", path("f")});
    ASSERT_EQ(f.code, 0) << f.err;
    const auto fit = nlohmann::json::parse(slurp(dir_ / "f" / "fit.json"));
    EXPECT_EQ(fit["method"], "lse-log");
    EXPECT_GT(fit["params"]["alpha"].get<double>(), 0.0);
    EXPECT_TRUE(fit.contains("dropped"));
}

TEST_F(CliTest, NoJumpsInWindowChoosesOneBin) {
    std::ofstream(path("j.csv")) << "time,size\n1,0.01\n2,5\n";
    const auto r = invoke({"estimate", "--jumps", path("j.csv"), "--T", "100", "--family", "regular:1..20", "--out",
                        path("e")});
    ASSERT_EQ(r.code, 0) << r.err;
    std::ifstream est(dir_ / "e" / "estimate.csv");
    std::string line;
    std::getline(est, line);
    std::size_t rows = 0;
    while (std::getline(est, line)) {
        ++rows;
        EXPECT_EQ(line.substr(line.rfind(',') + 1), "0");
    }
    EXPECT_EQ(rows, 1u);
}

TEST_F(CliTest, EstimateFromIncrementsAndRegularized) {
    ASSERT_EQ(invoke({"simulate", "gamma", "--steps", "36500", "--seed", "4", "--out", path("s")}).code, 0);
    auto r = invoke({"estimate", "--increments", path("s/increments.csv"), "--family", "regular:1..20", "--out",
                  path("e")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(invoke({"estimate", "--increments", path("s/increments.csv"), "--pen", "a:1,1", "--out", path("e2")}).code,
              kUsage);
    ASSERT_EQ(invoke({"simulate", "gamma", "--jumps", "5000", "--seed", "4", "--out", path("j")}).code, 0);
    r = invoke({"estimate", "--jumps", path("j/jumps.csv"), "--measure", "inv-square", "--family", "regularized:1..20",
             "--truth", "gamma:1,1", "--out", path("reg")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto est = nlohmann::json::parse(slurp(dir_ / "reg" / "manifest.json"));
    EXPECT_EQ(est["config"]["family"], "regularized:1..20");
}

TEST_F(CliTest, FitFromIncrements) {
    ASSERT_EQ(invoke({"simulate", "gamma", "--alpha", "2", "--beta", "0.5", "--steps", "5000", "--seed", "8", "--out",
                   path("s")})
                  .code,
              0);
    ASSERT_EQ(invoke({"fit", "--method", "mle", "--increments", path("s/increments.csv"), "--out", path("f")}).code, 0);
    const auto fit = nlohmann::json::parse(slurp(dir_ / "f" / "fit.json"));
    EXPECT_NEAR(fit["params"]["alpha"].get<double>(), 2.0, 0.3);
    EXPECT_NEAR(fit["params"]["beta"].get<double>(), 0.5, 0.1);

    ASSERT_EQ(invoke({"simulate", "vg", "--theta", "0.1", "--sigma", "0.3", "--nu", "0.2", "--steps", "5000", "--T",
                   "500", "--out", path("v")})
                  .code,
              0);
    ASSERT_EQ(invoke({"fit", "--method", "mom-vg", "--increments", path("v/increments.csv"), "--out", path("m")}).code,
              0);
    const auto mom = nlohmann::json::parse(slurp(dir_ / "m" / "fit.json"));
    EXPECT_TRUE(mom.contains("gamma_pair"));
    EXPECT_EQ(invoke({"fit", "--method", "lse-vg-tails", "--increments", path("v/increments.csv"), "--window", "0.01",
                   "0.2", "--out", path("t")})
                  .code,
              0);
    EXPECT_EQ(invoke({"fit", "--method", "ml", "--out", path("x")}).code, kUsage);
}

TEST_F(CliTest, Table1SingleDt) {
    const auto r = invoke({"table1", "--dts", "0.5", "--reps", "2", "--jump-terms", "3650", "--out", path("t")});
    ASSERT_EQ(r.code, 0) << r.err;
    std::ifstream in(dir_ / "t" / "table1.csv");
    std::string line;
    std::vector<std::string> rows;
    std::size_t comments = 0;
    while (std::getline(in, line)) {
        if (line[0] == '#') {
            ++comments;
        } else {
            rows.push_back(line);
        }
    }
    EXPECT_GT(comments, 0u);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0].rfind("dt,sim_mode,ppe_lse_alpha,", 0), 0u);
    EXPECT_EQ(rows[1].rfind("0.5,jump,", 0), 0u);
    EXPECT_EQ(rows[2].rfind("0.5,increment,", 0), 0u);

    const auto one = invoke({"table1", "--dts", "0.5", "--reps", "2", "--mode", "increment", "--out", path("u")});
    ASSERT_EQ(one.code, 0);
    EXPECT_EQ(data_rows(dir_ / "u" / "table1.csv"), 1u);
}

TEST_F(CliTest, Table1ThreadInvariant) {
    for (const char* t : {"1", "3"}) {
        ASSERT_EQ(invoke({"table1", "--dts", "1,0.1", "--reps", "3", "--jump-terms", "3650", "--threads", t, "--out",
                       path(std::string("t") + t)})
                      .code,
                  0);
    }
    EXPECT_EQ(slurp(dir_ / "t1" / "table1.csv"), slurp(dir_ / "t3" / "table1.csv"));
}

TEST_F(CliTest, VerifyVgRoundTrip) {
    const auto r = invoke({"verify", "vg-roundtrip", "--out", path("v")});
    EXPECT_EQ(r.code, kOk) << r.out;
    EXPECT_NE(r.out.find("PASS vg-conversion"), std::string::npos);
    EXPECT_TRUE(fs::exists(dir_ / "v" / "vg-roundtrip.csv"));
    EXPECT_TRUE(fs::exists(dir_ / "v" / "manifest.json"));
}

TEST_F(CliTest, VerifyFailureExitsOne) {
    // the first-bin activity estimate carries a deterministic bias of 2.5% at
    // x1 = 0.05, about 20 SE at the default replication count
    const auto r = invoke({"verify", "regularized-alpha", "--out", path("v")});
    EXPECT_EQ(r.code, kCheckFailed) << r.out;
    EXPECT_NE(r.out.find("FAIL alpha-mean"), std::string::npos);
    EXPECT_NE(r.out.find("PASS alpha-variance"), std::string::npos);
}

TEST(Checks, NamesDispatch) {
    EXPECT_EQ(check_names().size(), 7u);
    EXPECT_THROW(run_check("x", {}), UsageError);
    const auto report = run_check("vg-roundtrip", {3, 100, 1});
    EXPECT_TRUE(report.passed());
    EXPECT_EQ(report.replications, 100u);
}

#endif
