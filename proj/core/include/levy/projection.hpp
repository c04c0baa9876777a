#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "levy/levy_sim.hpp"

namespace levy {

/// Reference measure eta(dx) = w(x) dx on the estimation window.
class ReferenceMeasure {
public:
    enum class Kind { Lebesgue, InverseSquare, Weighted };

    static ReferenceMeasure lebesgue();
    /// eta(dx) = x^-2 dx
    static ReferenceMeasure inverse_square();
    /// eta(dx) = w(x) dx with w > 0 on the window. Bin masses use quadrature.
    static ReferenceMeasure weighted(std::function<double(double)> weight,
                                     std::string label = "weighted");

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }

    /// d eta / dx at x.
    double density(double x) const;
    /// eta([lo, hi)).
    double mass(double lo, double hi) const;

private:
    ReferenceMeasure(Kind kind, std::string name, std::function<double(double)> weight)
        : kind_(kind), name_(std::move(name)), weight_(std::move(weight)) {}

    Kind kind_;
    std::string name_;
    std::function<double(double)> weight_;
};

struct Window {
    double lo = 0.0;
    double hi = 1.0;

    double width() const { return hi - lo; }
    bool contains(double x) const { return x >= lo && x <= hi; }
};

enum class BasisKind { RegularHistogram, Histogram, RegularizedHistogram };

struct BasisSpec {
    BasisKind kind = BasisKind::RegularHistogram;
    std::size_t bins = 1;
    std::vector<double> cutpoints;

    static BasisSpec regular(std::size_t bins);
    static BasisSpec histogram(std::vector<double> cutpoints);
    /// Cutpoints 0 = x0 < x1 < ... < xm; first basis function x / sqrt(x1).
    static BasisSpec regularized(std::vector<double> cutpoints);
    /// Regularized basis on the regular partition of [0, hi] with `bins` pieces.
    static BasisSpec regularized_regular(double hi, std::size_t bins);
};

/// Finite-dimensional estimation space of piecewise functions on a window.
///
/// Bin i is [x_{i-1}, x_i), the last bin also contains the right endpoint.
/// Every basis function lives on a single bin: phi_i = scale_i on its bin,
/// except the first function of the regularized basis, phi_1(x) = x / sqrt(x1).
class LinearModel {
public:
    const Window& window() const { return window_; }
    const ReferenceMeasure& measure() const { return measure_; }
    BasisKind basis_kind() const { return kind_; }
    const std::vector<double>& cutpoints() const { return cuts_; }

    /// d_m
    std::size_t dim() const { return scale_.size(); }
    /// D_m = sup_x sum_i phi_i(x)^2
    double sup_constant() const { return sup_constant_; }

    std::optional<std::size_t> locate(double x) const;

    /// phi_i(x) for x known to lie in bin i.
    double basis_in_bin(std::size_t i, double x) const {
        return (i == 0 && linear_first_) ? scale_[0] * x : scale_[i];
    }
    /// phi_i(x); zero off bin i and outside the window.
    double basis(std::size_t i, double x) const;
    /// sum_i phi_i(x)^2
    double sum_of_squares(double x) const;
    /// sum_i c_i phi_i(x)
    double evaluate(std::span<const double> coefficients, double x) const;

    bool linear_first_bin() const { return linear_first_; }
    double bin_scale(std::size_t i) const { return scale_[i]; }

private:
    friend LinearModel build_model(const Window&, const ReferenceMeasure&, const BasisSpec&);

    LinearModel(Window window, ReferenceMeasure measure, BasisKind kind)
        : window_(window), measure_(std::move(measure)), kind_(kind) {}

    Window window_;
    ReferenceMeasure measure_;
    BasisKind kind_;
    std::vector<double> cuts_;
    std::vector<double> scale_;
    bool linear_first_ = false;
    bool regular_ = false;
    double sup_constant_ = 0.0;
};

LinearModel build_model(const Window& window, const ReferenceMeasure& measure,
                        const BasisSpec& basis);

/// Coefficients of sum_i beta_i phi_i against a model; zero outside the window.
struct ProjectionEstimate {
    LinearModel model;
    std::vector<double> coefficients;
    double horizon = 0.0;

    double operator()(double x) const { return model.evaluate(coefficients, x); }
    /// ||estimate||^2 under the model's measure.
    double norm_sq() const;
};

/// Regularized Levy density s = d nu / d eta.
struct DensitySpec {
    std::function<double(double)> value;
    /// Optional antiderivative of the Levy density p = s * (d eta / dx), so
    /// that nu([a, b)) = F(b) - F(a). Used for constant basis functions.
    std::function<double(double)> levy_antiderivative;
};

/// Single pass over sizes: coefficients, V-hat and the count in the window.
struct ModelStatistics {
    std::vector<double> coefficients;
    double vhat = 0.0;
    std::size_t count_in_window = 0;
};

ModelStatistics accumulate(std::span<const double> sizes, double horizon, const LinearModel& model);

/// beta_i = (1/T) sum over sizes in the window of phi_i(size).
ProjectionEstimate project(std::span<const double> sizes, double horizon, const LinearModel& model);
ProjectionEstimate project(const JumpSet& jumps, const LinearModel& model);

/// gamma(f) = -(2/T) sum_j f(size_j) + ||f||^2 with f = sum_i c_i phi_i.
double contrast(std::span<const double> coefficients, const LinearModel& model,
                std::span<const double> sizes, double horizon);
double contrast(std::span<const double> coefficients, const LinearModel& model, const JumpSet& jumps);

/// V-hat = (1/T) sum_j sum_i phi_i(size_j)^2.
double vhat(std::span<const double> sizes, double horizon, const LinearModel& model);
double vhat(const JumpSet& jumps, const LinearModel& model);

/// beta_i = integral of phi_i s d eta over the window.
std::vector<double> orthogonal_projection(const DensitySpec& truth, const LinearModel& model);

/// ||s - f||^2 under eta on the window, f = sum_i c_i phi_i, by quadrature.
double l2_distance_sq(std::span<const double> coefficients, const DensitySpec& truth,
                      const LinearModel& model);
double l2_distance_sq(const ProjectionEstimate& estimate, const DensitySpec& truth);

/// integral of s^2 d eta over the window.
double norm_sq(const DensitySpec& truth, const LinearModel& model);

/// Per-basis integrals of phi_i^2 s d eta. Their sum over T is the
/// variance term E[chi^2]; their sum alone is E[V-hat].
std::vector<double> basis_second_moments(const DensitySpec& truth, const LinearModel& model);

}  // namespace levy
