#include "levy/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "levy/errors.hpp"

namespace levy::io {

std::string format_double(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
        text.remove_prefix(1);
    }
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
        text.remove_suffix(1);
    }
    if (text == "nan") {
        return std::nan("");
    }
    if (text == "inf") {
        return INFINITY;
    }
    if (text == "-inf") {
        return -INFINITY;
    }
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    if (begin != end && *begin == '+') {
        ++begin;
    }
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc() || res.ptr != end) {
        throw InvalidData("not a number: '" + std::string(text) + "'");
    }
    return value;
}

namespace {

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    return line;
}

// Reads the header and the rows of a CSV with exactly the given columns.
std::vector<std::vector<double>> read_table(std::istream& in, std::string_view header) {
    std::string line;
    if (!std::getline(in, line)) {
        throw InvalidData("empty CSV input, expected header '" + std::string(header) + "'");
    }
    line = strip_cr(line);
    if (line != header) {
        throw InvalidData("unexpected CSV header '" + line + "', expected '" + std::string(header) + "'");
    }
    const std::size_t columns = split(header).size();
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) {
            continue;
        }
        const auto fields = split(line);
        if (fields.size() != columns) {
            throw InvalidData("line " + std::to_string(line_no) + ": expected " + std::to_string(columns) +
                              " fields, got " + std::to_string(fields.size()));
        }
        std::vector<double> row;
        row.reserve(columns);
        for (const auto field : fields) {
            try {
                row.push_back(parse_double(field));
            } catch (const InvalidData& e) {
                throw InvalidData("line " + std::to_string(line_no) + ": " + e.what());
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

void write_jumps_csv(std::ostream& out, const JumpSet& jumps) {
    out << "time,size\n";
    for (const auto& j : jumps.jumps) {
        out << format_double(j.time) << ',' << format_double(j.size) << '\n';
    }
}

JumpSet read_jumps_csv(std::istream& in, double horizon) {
    if (!(horizon > 0.0)) {
        throw std::invalid_argument("horizon must be positive");
    }
    JumpSet out;
    out.horizon = horizon;
    for (const auto& row : read_table(in, "time,size")) {
        if (!(row[0] >= 0.0 && row[0] <= horizon)) {
            throw InvalidData("jump time " + format_double(row[0]) + " outside [0, T]");
        }
        if (row[1] == 0.0 || !std::isfinite(row[1])) {
            throw InvalidData("jump sizes must be finite and nonzero");
        }
        out.jumps.push_back({row[0], row[1]});
    }
    return out;
}

void write_increments_csv(std::ostream& out, const IncrementSeries& series) {
    out << "k,t,increment\n";
    for (std::size_t k = 0; k < series.increments.size(); ++k) {
        out << (k + 1) << ',' << format_double(series.time(k + 1)) << ',' << format_double(series.increments[k])
            << '\n';
    }
}

IncrementSeries read_increments_csv(std::istream& in) {
    IncrementSeries out;
    const auto rows = read_table(in, "k,t,increment");
    if (rows.empty()) {
        throw InsufficientData("increment series has no rows");
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i][0] != static_cast<double>(i + 1)) {
            throw InvalidData("increment rows must be numbered 1..n in order");
        }
        if (!std::isfinite(rows[i][2])) {
            throw InvalidData("increments must be finite");
        }
        out.increments.push_back(rows[i][2]);
    }
    out.horizon = rows.back()[1];
    if (!(out.horizon > 0.0)) {
        throw InvalidData("last time stamp must be positive");
    }
    return out;
}

void write_estimate_csv(std::ostream& out, const ProjectionEstimate& estimate) {
    out << "x_left,x_right,coeff,value_at_mid\n";
    const auto& cuts = estimate.model.cutpoints();
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
        out << format_double(cuts[i]) << ',' << format_double(cuts[i + 1]) << ','
            << format_double(estimate.coefficients[i]) << ','
            << format_double(estimate.coefficients[i] * estimate.model.basis_in_bin(i, mid)) << '\n';
    }
}

std::vector<EstimateRow> read_estimate_csv(std::istream& in) {
    std::vector<EstimateRow> out;
    for (const auto& row : read_table(in, "x_left,x_right,coeff,value_at_mid")) {
        if (!(row[1] > row[0])) {
            throw InvalidData("estimate bins need x_left < x_right");
        }
        out.push_back({row[0], row[1], row[2], row[3]});
    }
    return out;
}

void write_selection_csv(std::ostream& out, const SelectionResult& result, const ModelCollection& collection) {
    out << "m,d_m,D_m,contrast,penalty,score,chosen\n";
    for (const auto& row : result.table) {
        const std::size_t bins = collection[row.index].cutpoints().size() - 1;
        out << bins << ',' << row.dim << ',' << format_double(row.sup_constant) << ','
            << format_double(row.contrast) << ',' << format_double(row.penalty) << ','
            << format_double(row.score) << ',' << (row.index == result.chosen_index ? 1 : 0) << '\n';
    }
}

void write_risk_csv(std::ostream& out, const RiskTable& table) {
    out << "m,bias_sq,var_analytic,var_mc,risk_mc,risk_se\n";
    auto emit = [&](const std::string& label, const RiskRow& row) {
        out << label << ',' << format_double(row.bias_sq) << ',' << format_double(row.var_analytic) << ','
            << format_double(row.var_mc) << ',' << format_double(row.risk_mc) << ','
            << format_double(row.risk_se) << '\n';
    };
    for (const auto& row : table.models) {
        emit(std::to_string(row.dim), row);
    }
    emit("ppe", table.ppe);
}

void write_rate_csv(std::ostream& out, const RateReport& report) {
    out << "T,risk_mc,risk_se\n";
    for (const auto& p : report.points) {
        out << format_double(p.horizon) << ',' << format_double(p.risk_mc) << ',' << format_double(p.risk_se)
            << '\n';
    }
}

}  // namespace levy::io
