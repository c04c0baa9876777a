#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "levy/projection.hpp"

namespace levy {

/// pen(m) at equality:
///   A: c D_m N / T^2 + c' d_m / T    (N = number of jumps in the window)
///   B: c V_m / T
///   C: c V_m / T + c' D_m / T + c'' d_m / T
struct PenaltyForm {
    enum class Kind { A, B, C };

    Kind kind = Kind::B;
    double c = 2.0;
    double c1 = 0.0;
    double c2 = 0.0;

    static PenaltyForm a(double c, double c1);
    static PenaltyForm b(double c);
    static PenaltyForm c_form(double c, double c1, double c2);

    void validate() const;
    std::string label() const;
};

using ModelCollection = std::vector<LinearModel>;

/// Regular histograms with m = m_min..m_max bins on the window.
ModelCollection regular_family(const Window& window, const ReferenceMeasure& measure, std::size_t m_min,
                               std::size_t m_max);

/// Regularized bases (inverse-square measure) on the regular partitions of
/// [0, hi] with m = m_min..m_max pieces.
ModelCollection regularized_family(double hi, std::size_t m_min, std::size_t m_max);

/// Penalty from statistics already accumulated on the model.
double penalty(const PenaltyForm& form, const ModelStatistics& stats, double horizon,
               const LinearModel& model);
double penalty(const PenaltyForm& form, std::span<const double> sizes, double horizon,
               const LinearModel& model);
double penalty(const PenaltyForm& form, const JumpSet& jumps, const LinearModel& model);

bool is_admissible(const LinearModel& model, double horizon);

/// Models with D_m <= T in collection order. Throws EmptyAdmissible.
ModelCollection admissible(const ModelCollection& collection, double horizon);

struct ModelScore {
    std::size_t index = 0;
    std::size_t dim = 0;
    double sup_constant = 0.0;
    double contrast = 0.0;
    double penalty = 0.0;
    double score = 0.0;
    bool admissible = false;
};

struct ScoredModel {
    ModelScore row;
    ProjectionEstimate estimate;
};

/// contrast(beta-hat) + pen(m) = -sum beta-hat^2 + pen(m).
ScoredModel score_model(std::span<const double> sizes, double horizon, const LinearModel& model,
                        const PenaltyForm& form, std::size_t index = 0);

struct SelectionResult {
    std::size_t chosen_index = 0;
    ProjectionEstimate estimate;
    std::vector<ModelScore> table;
    /// Set by the increment-based selector when a model lies outside the
    /// small-time approximation's proven scope.
    bool outside_proven_scope = false;
};

/// Penalized projection estimator over the admissible part of the
/// collection. Ties go to the smallest d_m, then the smallest index.
SelectionResult select(std::span<const double> sizes, double horizon, const ModelCollection& collection,
                       const PenaltyForm& form);
SelectionResult select(const JumpSet& jumps, const ModelCollection& collection, const PenaltyForm& form);

}  // namespace levy
