#include "levy/projection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "levy/quadrature.hpp"

namespace levy {

ReferenceMeasure ReferenceMeasure::lebesgue() {
    return ReferenceMeasure(Kind::Lebesgue, "lebesgue", nullptr);
}

ReferenceMeasure ReferenceMeasure::inverse_square() {
    return ReferenceMeasure(Kind::InverseSquare, "inv-square", nullptr);
}

ReferenceMeasure ReferenceMeasure::weighted(std::function<double(double)> weight, std::string label) {
    if (!weight) {
        throw std::invalid_argument("weighted measure needs a weight function");
    }
    return ReferenceMeasure(Kind::Weighted, std::move(label), std::move(weight));
}

double ReferenceMeasure::density(double x) const {
    switch (kind_) {
        case Kind::Lebesgue:
            return 1.0;
        case Kind::InverseSquare:
            return 1.0 / (x * x);
        case Kind::Weighted:
            return weight_(x);
    }
    return 1.0;
}

double ReferenceMeasure::mass(double lo, double hi) const {
    switch (kind_) {
        case Kind::Lebesgue:
            return hi - lo;
        case Kind::InverseSquare:
            return 1.0 / lo - 1.0 / hi;
        case Kind::Weighted:
            return integrate(weight_, lo, hi);
    }
    return hi - lo;
}

BasisSpec BasisSpec::regular(std::size_t bins) { return {BasisKind::RegularHistogram, bins, {}}; }

BasisSpec BasisSpec::histogram(std::vector<double> cutpoints) {
    const std::size_t bins = cutpoints.empty() ? 0 : cutpoints.size() - 1;
    return {BasisKind::Histogram, bins, std::move(cutpoints)};
}

BasisSpec BasisSpec::regularized(std::vector<double> cutpoints) {
    const std::size_t bins = cutpoints.empty() ? 0 : cutpoints.size() - 1;
    return {BasisKind::RegularizedHistogram, bins, std::move(cutpoints)};
}

BasisSpec BasisSpec::regularized_regular(double hi, std::size_t bins) {
    if (bins == 0) {
        throw std::invalid_argument("regularized basis needs at least one bin");
    }
    std::vector<double> cuts(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i) {
        cuts[i] = hi * static_cast<double>(i) / static_cast<double>(bins);
    }
    cuts[bins] = hi;
    return regularized(std::move(cuts));
}

namespace {

std::vector<double> regular_cuts(const Window& w, std::size_t bins) {
    std::vector<double> cuts(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i) {
        cuts[i] = w.lo + w.width() * static_cast<double>(i) / static_cast<double>(bins);
    }
    cuts[0] = w.lo;
    cuts[bins] = w.hi;
    return cuts;
}

void check_cuts(const std::vector<double>& cuts, const Window& w) {
    if (cuts.size() < 2) {
        throw std::invalid_argument("a histogram basis needs at least two cutpoints");
    }
    if (cuts.front() != w.lo || cuts.back() != w.hi) {
        throw std::invalid_argument("cutpoints must span the window exactly");
    }
    for (std::size_t i = 1; i < cuts.size(); ++i) {
        if (!(cuts[i] > cuts[i - 1])) {
            throw std::invalid_argument("cutpoints must be strictly increasing (zero-width bin?)");
        }
    }
}

}  // namespace

LinearModel build_model(const Window& window, const ReferenceMeasure& measure, const BasisSpec& basis) {
    if (!std::isfinite(window.lo) || !std::isfinite(window.hi) || !(window.hi > window.lo)) {
        throw std::invalid_argument("window must be a finite interval with lo < hi");
    }
    if (window.lo < 0.0 && window.hi > 0.0) {
        throw std::invalid_argument("window must not contain 0 in its interior");
    }
    LinearModel model(window, measure, basis.kind);
    switch (basis.kind) {
        case BasisKind::RegularHistogram:
            if (basis.bins == 0) {
                throw std::invalid_argument("regular histogram needs at least one bin");
            }
            model.cuts_ = regular_cuts(window, basis.bins);
            model.regular_ = true;
            break;
        case BasisKind::Histogram:
            model.cuts_ = basis.cutpoints;
            break;
        case BasisKind::RegularizedHistogram:
            if (measure.kind() != ReferenceMeasure::Kind::InverseSquare) {
                throw std::invalid_argument("regularized basis requires the inverse-square measure");
            }
            if (basis.cutpoints.empty() || basis.cutpoints.front() != 0.0 || window.lo != 0.0) {
                throw std::invalid_argument("regularized basis requires x0 = 0 and a window [0, b]");
            }
            model.cuts_ = basis.cutpoints;
            model.linear_first_ = true;
            break;
    }
    check_cuts(model.cuts_, window);
    if (basis.kind != BasisKind::RegularizedHistogram &&
        measure.kind() == ReferenceMeasure::Kind::InverseSquare &&
        (window.lo == 0.0 || window.hi == 0.0)) {
        throw std::invalid_argument(
            "inverse-square histogram bins cannot touch 0; use the regularized basis");
    }
    const std::size_t bins = model.cuts_.size() - 1;
    model.scale_.resize(bins);
    double sup = 0.0;
    for (std::size_t i = 0; i < bins; ++i) {
        const double lo = model.cuts_[i];
        const double hi = model.cuts_[i + 1];
        if (i == 0 && model.linear_first_) {
            // phi_1 = x / sqrt(x1): int_0^x1 x^2 / x1 * x^-2 dx = 1, sup phi_1^2 = x1
            model.scale_[0] = 1.0 / std::sqrt(hi);
            sup = std::max(sup, hi);
            continue;
        }
        // regular Lebesgue bins share the exact mass (b - a) / m, free of cutpoint rounding
        const double mass = (model.regular_ && measure.kind() == ReferenceMeasure::Kind::Lebesgue)
                                ? window.width() / static_cast<double>(bins)
                                : measure.mass(lo, hi);
        if (!(mass > 0.0) || !std::isfinite(mass)) {
            throw std::invalid_argument("reference measure gives a bin non-positive or infinite mass");
        }
        model.scale_[i] = 1.0 / std::sqrt(mass);
        sup = std::max(sup, 1.0 / mass);
    }
    model.sup_constant_ = sup;
    return model;
}

std::optional<std::size_t> LinearModel::locate(double x) const {
    if (!(x >= window_.lo && x <= window_.hi)) {
        return std::nullopt;
    }
    const std::size_t bins = cuts_.size() - 1;
    std::size_t i;
    if (regular_) {
        const double pos = (x - window_.lo) / window_.width() * static_cast<double>(bins);
        i = pos <= 0.0 ? 0 : std::min(bins - 1, static_cast<std::size_t>(pos));
        while (i > 0 && x < cuts_[i]) {
            --i;
        }
        while (i + 1 < bins && x >= cuts_[i + 1]) {
            ++i;
        }
    } else {
        auto it = std::upper_bound(cuts_.begin(), cuts_.end(), x);
        i = static_cast<std::size_t>(it - cuts_.begin());
        i = i == 0 ? 0 : std::min(bins - 1, i - 1);
    }
    return i;
}

double LinearModel::basis(std::size_t i, double x) const {
    const auto bin = locate(x);
    if (!bin || *bin != i) {
        return 0.0;
    }
    return basis_in_bin(i, x);
}

double LinearModel::sum_of_squares(double x) const {
    const auto bin = locate(x);
    if (!bin) {
        return 0.0;
    }
    const double phi = basis_in_bin(*bin, x);
    return phi * phi;
}

double LinearModel::evaluate(std::span<const double> coefficients, double x) const {
    if (coefficients.size() != dim()) {
        throw std::invalid_argument("coefficient vector length differs from the model dimension");
    }
    const auto bin = locate(x);
    if (!bin) {
        return 0.0;
    }
    return coefficients[*bin] * basis_in_bin(*bin, x);
}

double ProjectionEstimate::norm_sq() const {
    double acc = 0.0;
    for (double c : coefficients) {
        acc += c * c;
    }
    return acc;
}

namespace {

void require_positive_horizon(double horizon) {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw std::invalid_argument("horizon T must be positive");
    }
}

}  // namespace

ModelStatistics accumulate(std::span<const double> sizes, double horizon, const LinearModel& model) {
    require_positive_horizon(horizon);
    ModelStatistics out;
    out.coefficients.assign(model.dim(), 0.0);
    double sum_sq = 0.0;
    for (double x : sizes) {
        const auto bin = model.locate(x);
        if (!bin) {
            continue;
        }
        const double phi = model.basis_in_bin(*bin, x);
        out.coefficients[*bin] += phi;
        sum_sq += phi * phi;
        ++out.count_in_window;
    }
    for (double& c : out.coefficients) {
        c /= horizon;
    }
    out.vhat = sum_sq / horizon;
    return out;
}

ProjectionEstimate project(std::span<const double> sizes, double horizon, const LinearModel& model) {
    ModelStatistics stats = accumulate(sizes, horizon, model);
    return {model, std::move(stats.coefficients), horizon};
}

ProjectionEstimate project(const JumpSet& jumps, const LinearModel& model) {
    const std::vector<double> sizes = jumps.sizes();
    return project(sizes, jumps.horizon, model);
}

double contrast(std::span<const double> coefficients, const LinearModel& model,
                std::span<const double> sizes, double horizon) {
    require_positive_horizon(horizon);
    if (coefficients.size() != model.dim()) {
        throw std::invalid_argument("coefficient vector length differs from the model dimension");
    }
    double linear = 0.0;
    for (double x : sizes) {
        linear += model.evaluate(coefficients, x);
    }
    double quadratic = 0.0;
    for (double c : coefficients) {
        quadratic += c * c;
    }
    return -2.0 / horizon * linear + quadratic;
}

double contrast(std::span<const double> coefficients, const LinearModel& model, const JumpSet& jumps) {
    const std::vector<double> sizes = jumps.sizes();
    return contrast(coefficients, model, sizes, jumps.horizon);
}

double vhat(std::span<const double> sizes, double horizon, const LinearModel& model) {
    require_positive_horizon(horizon);
    double acc = 0.0;
    for (double x : sizes) {
        acc += model.sum_of_squares(x);
    }
    return acc / horizon;
}

double vhat(const JumpSet& jumps, const LinearModel& model) {
    const std::vector<double> sizes = jumps.sizes();
    return vhat(sizes, jumps.horizon, model);
}

namespace {

double bin_lo(const LinearModel& m, std::size_t i) { return m.cutpoints()[i]; }
double bin_hi(const LinearModel& m, std::size_t i) { return m.cutpoints()[i + 1]; }

bool is_constant_bin(const LinearModel& m, std::size_t i) { return !(i == 0 && m.linear_first_bin()); }

}  // namespace

std::vector<double> orthogonal_projection(const DensitySpec& truth, const LinearModel& model) {
    const auto& measure = model.measure();
    std::vector<double> beta(model.dim());
    for (std::size_t i = 0; i < model.dim(); ++i) {
        const double lo = bin_lo(model, i);
        const double hi = bin_hi(model, i);
        if (is_constant_bin(model, i) && truth.levy_antiderivative) {
            beta[i] = model.bin_scale(i) * (truth.levy_antiderivative(hi) - truth.levy_antiderivative(lo));
            continue;
        }
        beta[i] = integrate(
            [&](double x) { return model.basis_in_bin(i, x) * truth.value(x) * measure.density(x); },
            lo, hi);
    }
    return beta;
}

double l2_distance_sq(std::span<const double> coefficients, const DensitySpec& truth,
                      const LinearModel& model) {
    if (coefficients.size() != model.dim()) {
        throw std::invalid_argument("coefficient vector length differs from the model dimension");
    }
    const auto& measure = model.measure();
    double acc = 0.0;
    for (std::size_t i = 0; i < model.dim(); ++i) {
        const double c = coefficients[i];
        acc += integrate(
            [&](double x) {
                const double diff = truth.value(x) - c * model.basis_in_bin(i, x);
                return diff * diff * measure.density(x);
            },
            bin_lo(model, i), bin_hi(model, i));
    }
    return acc;
}

double l2_distance_sq(const ProjectionEstimate& estimate, const DensitySpec& truth) {
    return l2_distance_sq(estimate.coefficients, truth, estimate.model);
}

double norm_sq(const DensitySpec& truth, const LinearModel& model) {
    const auto& measure = model.measure();
    double acc = 0.0;
    for (std::size_t i = 0; i < model.dim(); ++i) {
        acc += integrate(
            [&](double x) {
                const double s = truth.value(x);
                return s * s * measure.density(x);
            },
            bin_lo(model, i), bin_hi(model, i));
    }
    return acc;
}

std::vector<double> basis_second_moments(const DensitySpec& truth, const LinearModel& model) {
    const auto& measure = model.measure();
    std::vector<double> out(model.dim());
    for (std::size_t i = 0; i < model.dim(); ++i) {
        const double lo = bin_lo(model, i);
        const double hi = bin_hi(model, i);
        const double scale = model.bin_scale(i);
        if (is_constant_bin(model, i) && truth.levy_antiderivative) {
            out[i] = scale * scale * (truth.levy_antiderivative(hi) - truth.levy_antiderivative(lo));
            continue;
        }
        out[i] = integrate(
            [&](double x) {
                const double phi = model.basis_in_bin(i, x);
                return phi * phi * truth.value(x) * measure.density(x);
            },
            lo, hi);
    }
    return out;
}

}  // namespace levy
