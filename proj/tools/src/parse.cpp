#include "levy_cli/parse.hpp"

#include <charconv>

#include "levy/errors.hpp"
#include "levy/io.hpp"

namespace levy::cli {

namespace {

std::size_t parse_size(std::string_view text) {
    std::size_t value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        throw UsageError("not a non-negative integer: '" + std::string(text) + "'");
    }
    return value;
}

std::pair<std::string_view, std::string_view> split_kind(std::string_view text, std::string_view what) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw UsageError(std::string(what) + " needs the form kind:values, got '" + std::string(text) + "'");
    }
    return {text.substr(0, colon), text.substr(colon + 1)};
}

std::vector<double> expect_count(std::string_view text, std::size_t n, std::string_view what) {
    auto values = parse_list(text);
    if (values.size() != n) {
        throw UsageError(std::string(what) + " expects " + std::to_string(n) + " comma-separated values");
    }
    return values;
}

std::string join(const std::vector<double>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out += (i ? "," : "") + io::format_double(xs[i]);
    }
    return out;
}

}  // namespace

std::vector<double> parse_list(std::string_view text) {
    std::vector<double> out;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const auto item = text.substr(0, comma);
        try {
            out.push_back(io::parse_double(item));
        } catch (const DataError&) {
            throw UsageError("not a number: '" + std::string(item) + "'");
        }
        if (comma == std::string_view::npos) {
            break;
        }
        text.remove_prefix(comma + 1);
    }
    return out;
}

CollectionSpec parse_family(std::string_view text) {
    const auto [kind, range] = split_kind(text, "family");
    CollectionSpec spec;
    if (kind == "regular") {
        spec.kind = CollectionSpec::Kind::Regular;
    } else if (kind == "regularized") {
        spec.kind = CollectionSpec::Kind::Regularized;
    } else {
        throw UsageError("unknown family '" + std::string(kind) + "' (regular or regularized)");
    }
    const auto dots = range.find("..");
    if (dots == std::string_view::npos) {
        spec.m_min = spec.m_max = parse_size(range);
    } else {
        spec.m_min = parse_size(range.substr(0, dots));
        spec.m_max = parse_size(range.substr(dots + 2));
    }
    if (spec.m_min == 0 || spec.m_max < spec.m_min) {
        throw UsageError("family range needs 1 <= m_min <= m_max");
    }
    return spec;
}

std::string format_family(const CollectionSpec& spec) {
    return std::string(spec.kind == CollectionSpec::Kind::Regular ? "regular:" : "regularized:") +
           std::to_string(spec.m_min) + ".." + std::to_string(spec.m_max);
}

PenaltyForm parse_penalty(std::string_view text) {
    const auto [kind, values] = split_kind(text, "penalty");
    if (kind != "a" && kind != "b" && kind != "c") {
        throw UsageError("unknown penalty '" + std::string(kind) + "' (a, b or c)");
    }
    const auto v = expect_count(values, kind == "a" ? 2 : kind == "b" ? 1 : 3, "penalty " + std::string(kind));
    try {
        PenaltyForm form = kind == "a"   ? PenaltyForm::a(v[0], v[1])
                           : kind == "b" ? PenaltyForm::b(v[0])
                                         : PenaltyForm::c_form(v[0], v[1], v[2]);
        form.validate();
        return form;
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

ReferenceMeasure parse_measure(std::string_view text) {
    if (text == "lebesgue") {
        return ReferenceMeasure::lebesgue();
    }
    if (text == "inv-square") {
        return ReferenceMeasure::inverse_square();
    }
    throw UsageError("unknown measure '" + std::string(text) + "' (lebesgue or inv-square)");
}

ProcessSpec parse_process(std::string_view text) {
    const auto [kind, values] = split_kind(text, "process");
    ProcessSpec out;
    if (kind == "gamma") {
        const auto v = expect_count(values, 2, "gamma");
        out = GammaParams{v[0], v[1]};
    } else if (kind == "vg") {
        const auto v = expect_count(values, 3, "vg");
        out = VGParams{v[0], v[1], v[2]};
    } else if (kind == "piecewise") {
        const auto [cuts, rates] = split_kind(values, "piecewise");
        out = PiecewiseConstantLevy{parse_list(cuts), parse_list(rates)};
    } else {
        throw UsageError("unknown process '" + std::string(kind) + "' (gamma, vg or piecewise)");
    }
    try {
        validate(out);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return out;
}

std::string format_process(const ProcessSpec& process) {
    if (const auto* g = std::get_if<GammaParams>(&process)) {
        return "gamma:" + join({g->alpha, g->beta});
    }
    if (const auto* v = std::get_if<VGParams>(&process)) {
        return "vg:" + join({v->theta, v->sigma, v->nu});
    }
    const auto& p = std::get<PiecewiseConstantLevy>(process);
    return "piecewise:" + join(p.cuts) + ":" + join(p.rates);
}

}  // namespace levy::cli
