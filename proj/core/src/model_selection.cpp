#include "levy/model_selection.hpp"

#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "levy/errors.hpp"

namespace levy {

PenaltyForm PenaltyForm::a(double c, double c1) { return {Kind::A, c, c1, 0.0}; }
PenaltyForm PenaltyForm::b(double c) { return {Kind::B, c, 0.0, 0.0}; }
PenaltyForm PenaltyForm::c_form(double c, double c1, double c2) { return {Kind::C, c, c1, c2}; }

void PenaltyForm::validate() const {
    if (!(c > 1.0) || !std::isfinite(c)) {
        throw std::invalid_argument("penalty constant c must exceed 1");
    }
    if (kind != Kind::B && (!(c1 > 0.0) || !std::isfinite(c1))) {
        throw std::invalid_argument("penalty constant c' must be positive");
    }
    if (kind == Kind::C && (!(c2 > 0.0) || !std::isfinite(c2))) {
        throw std::invalid_argument("penalty constant c'' must be positive");
    }
}

std::string PenaltyForm::label() const {
    std::ostringstream out;
    out.precision(17);
    switch (kind) {
        case Kind::A:
            out << "a:" << c << "," << c1;
            break;
        case Kind::B:
            out << "b:" << c;
            break;
        case Kind::C:
            out << "c:" << c << "," << c1 << "," << c2;
            break;
    }
    return out.str();
}

ModelCollection regular_family(const Window& window, const ReferenceMeasure& measure, std::size_t m_min,
                               std::size_t m_max) {
    if (m_min == 0 || m_max < m_min) {
        throw std::invalid_argument("model family needs 1 <= m_min <= m_max");
    }
    ModelCollection out;
    out.reserve(m_max - m_min + 1);
    for (std::size_t m = m_min; m <= m_max; ++m) {
        out.push_back(build_model(window, measure, BasisSpec::regular(m)));
    }
    return out;
}

ModelCollection regularized_family(double hi, std::size_t m_min, std::size_t m_max) {
    if (m_min == 0 || m_max < m_min) {
        throw std::invalid_argument("model family needs 1 <= m_min <= m_max");
    }
    ModelCollection out;
    out.reserve(m_max - m_min + 1);
    const Window window{0.0, hi};
    const ReferenceMeasure measure = ReferenceMeasure::inverse_square();
    for (std::size_t m = m_min; m <= m_max; ++m) {
        out.push_back(build_model(window, measure, BasisSpec::regularized_regular(hi, m)));
    }
    return out;
}

double penalty(const PenaltyForm& form, const ModelStatistics& stats, double horizon,
               const LinearModel& model) {
    form.validate();
    if (!(horizon > 0.0)) {
        throw std::invalid_argument("horizon T must be positive");
    }
    const double dim = static_cast<double>(model.dim());
    const double sup = model.sup_constant();
    switch (form.kind) {
        case PenaltyForm::Kind::A:
            return form.c * sup * static_cast<double>(stats.count_in_window) / (horizon * horizon) +
                   form.c1 * dim / horizon;
        case PenaltyForm::Kind::B:
            return form.c * stats.vhat / horizon;
        case PenaltyForm::Kind::C:
            return form.c * stats.vhat / horizon + form.c1 * sup / horizon + form.c2 * dim / horizon;
    }
    return 0.0;
}

double penalty(const PenaltyForm& form, std::span<const double> sizes, double horizon,
               const LinearModel& model) {
    return penalty(form, accumulate(sizes, horizon, model), horizon, model);
}

double penalty(const PenaltyForm& form, const JumpSet& jumps, const LinearModel& model) {
    const std::vector<double> sizes = jumps.sizes();
    return penalty(form, sizes, jumps.horizon, model);
}

bool is_admissible(const LinearModel& model, double horizon) { return model.sup_constant() <= horizon; }

ModelCollection admissible(const ModelCollection& collection, double horizon) {
    if (!(horizon > 0.0)) {
        throw std::invalid_argument("horizon T must be positive");
    }
    ModelCollection out;
    for (const auto& model : collection) {
        if (is_admissible(model, horizon)) {
            out.push_back(model);
        }
    }
    if (out.empty()) {
        throw EmptyAdmissible("no model satisfies D_m <= T; increase T or use coarser models");
    }
    return out;
}

ScoredModel score_model(std::span<const double> sizes, double horizon, const LinearModel& model,
                        const PenaltyForm& form, std::size_t index) {
    ModelStatistics stats = accumulate(sizes, horizon, model);
    ScoredModel out{{}, {model, {}, horizon}};
    double sum_sq = 0.0;
    for (double b : stats.coefficients) {
        sum_sq += b * b;
    }
    out.row.index = index;
    out.row.dim = model.dim();
    out.row.sup_constant = model.sup_constant();
    out.row.contrast = -sum_sq;
    out.row.penalty = penalty(form, stats, horizon, model);
    out.row.score = out.row.contrast + out.row.penalty;
    out.row.admissible = is_admissible(model, horizon);
    out.estimate.coefficients = std::move(stats.coefficients);
    return out;
}

SelectionResult select(std::span<const double> sizes, double horizon, const ModelCollection& collection,
                       const PenaltyForm& form) {
    form.validate();
    if (!(horizon > 0.0)) {
        throw std::invalid_argument("horizon T must be positive");
    }
    std::vector<ModelScore> table;
    table.reserve(collection.size());
    std::optional<ScoredModel> best;
    for (std::size_t i = 0; i < collection.size(); ++i) {
        ScoredModel scored = score_model(sizes, horizon, collection[i], form, i);
        table.push_back(scored.row);
        if (!scored.row.admissible) {
            continue;
        }
        const bool better = !best || scored.row.score < best->row.score ||
                            (scored.row.score == best->row.score && scored.row.dim < best->row.dim);
        if (better) {
            best = std::move(scored);
        }
    }
    if (!best) {
        throw EmptyAdmissible("no model satisfies D_m <= T; increase T or use coarser models");
    }
    SelectionResult out{best->row.index, std::move(best->estimate), std::move(table), false};
    return out;
}

SelectionResult select(const JumpSet& jumps, const ModelCollection& collection, const PenaltyForm& form) {
    const std::vector<double> sizes = jumps.sizes();
    return select(sizes, jumps.horizon, collection, form);
}

}  // namespace levy
