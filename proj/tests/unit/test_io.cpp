#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <sstream>

#include "levy/errors.hpp"
#include "levy/io.hpp"

using namespace levy;

TEST(FormatDouble, RoundTripsExactly) {
    std::mt19937_64 gen(1);
    std::uniform_int_distribution<std::uint64_t> bits;
    int checked = 0;
    while (checked < 5000) {
        const std::uint64_t b = bits(gen);
        double x;
        std::memcpy(&x, &b, sizeof x);
        if (!std::isfinite(x)) {
            continue;
        }
        ++checked;
        EXPECT_EQ(io::parse_double(io::format_double(x)), x);
    }
    EXPECT_EQ(io::format_double(0.1), "0.1");
    EXPECT_EQ(io::format_double(std::numeric_limits<double>::infinity()), "inf");
    EXPECT_EQ(io::format_double(-std::numeric_limits<double>::infinity()), "-inf");
    EXPECT_EQ(io::format_double(std::nan("")), "nan");
    EXPECT_TRUE(std::isnan(io::parse_double("nan")));
}

TEST(FormatDouble, RejectsGarbage) {
    EXPECT_THROW(io::parse_double("1,5"), InvalidData);
    EXPECT_THROW(io::parse_double("abc"), InvalidData);
    EXPECT_THROW(io::parse_double(""), InvalidData);
    EXPECT_THROW(io::parse_double("2.0x"), InvalidData);
}

TEST(JumpsCsv, RoundTrip) {
    JumpSet js = simulate_gamma_jumps({1.0, 1.0}, 10.0, 200, RngStream(3, 0));
    std::stringstream buf;
    io::write_jumps_csv(buf, js);
    const JumpSet back = io::read_jumps_csv(buf, 10.0);
    ASSERT_EQ(back.jumps.size(), js.jumps.size());
    for (std::size_t i = 0; i < js.jumps.size(); ++i) {
        EXPECT_EQ(back.jumps[i].time, js.jumps[i].time);
        EXPECT_EQ(back.jumps[i].size, js.jumps[i].size);
    }
    EXPECT_EQ(back.horizon, 10.0);
}

TEST(JumpsCsv, Malformed) {
    std::stringstream wrong_header("t,x\n1,2\n");
    EXPECT_THROW(io::read_jumps_csv(wrong_header, 1.0), InvalidData);
    std::stringstream short_row("time,size\n0.5\n");
    EXPECT_THROW(io::read_jumps_csv(short_row, 1.0), InvalidData);
    std::stringstream late("time,size\n2.0,0.5\n");
    EXPECT_THROW(io::read_jumps_csv(late, 1.0), InvalidData);
    std::stringstream empty;
    EXPECT_THROW(io::read_jumps_csv(empty, 1.0), InvalidData);
}

TEST(IncrementsCsv, RoundTrip) {
    const IncrementSeries inc = simulate_gamma_skeleton({1.0, 1.0}, 5.0, 50, RngStream(2, 0));
    std::stringstream buf;
    io::write_increments_csv(buf, inc);
    const IncrementSeries back = io::read_increments_csv(buf);
    EXPECT_EQ(back.increments, inc.increments);
    EXPECT_EQ(back.horizon, 5.0);
    std::stringstream bad("k,t,increment\n2,1,0.5\n");
    EXPECT_THROW(io::read_increments_csv(bad), InvalidData);
}

TEST(EstimateCsv, RoundTrip) {
    const auto model = build_model({0.1, 1.0}, ReferenceMeasure::lebesgue(), BasisSpec::regular(3));
    const ProjectionEstimate est{model, {0.5, 1.5, -0.25}, 2.0};
    std::stringstream buf;
    io::write_estimate_csv(buf, est);
    const auto rows = io::read_estimate_csv(buf);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[1].coeff, 1.5);
    EXPECT_NEAR(rows[1].x_left, 0.4, 1e-15);
    EXPECT_EQ(rows[2].x_right, 1.0);
    EXPECT_EQ(rows[1].value_at_mid, est(0.55));
}

TEST(SelectionCsv, MarksChosenModel) {
    const auto family = regular_family({0.0, 1.0}, ReferenceMeasure::lebesgue(), 1, 2);
    const std::vector<double> sizes{0.1, 0.2, 0.3};
    const auto sel = select(sizes, 2.0, family, PenaltyForm::b(2.0));
    std::stringstream buf;
    io::write_selection_csv(buf, sel, family);
    std::string header;
    std::string row1;
    std::string row2;
    std::getline(buf, header);
    std::getline(buf, row1);
    std::getline(buf, row2);
    EXPECT_EQ(header, "m,d_m,D_m,contrast,penalty,score,chosen");
    EXPECT_EQ(row1.substr(0, 2), "1,");
    EXPECT_EQ(row1.back(), '0');
    EXPECT_EQ(row2.back(), '1');
}

TEST(RiskCsv, HasPpeRow) {
    ExperimentConfig c;
    c.collection.m_max = 3;
    c.replications = 4;
    const auto table = mc_risk(c);
    std::stringstream buf;
    io::write_risk_csv(buf, table);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(buf, line)) {
        lines.push_back(line);
    }
    ASSERT_EQ(lines.size(), 5u);
    EXPECT_EQ(lines[0], "m,bias_sq,var_analytic,var_mc,risk_mc,risk_se");
    EXPECT_EQ(lines[4].substr(0, 4), "ppe,");
}
