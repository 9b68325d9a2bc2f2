#pragma once

#include <Eigen/Core>

#include <utility>
#include <vector>

#include "gosa/problem.hpp"

namespace gosa {

/// Defines the sublevel set: constraint relaxation T (componentwise >= 0)
/// plus the alpha-quantile level of the objective over the T-feasible
/// subsample. zero_fill is the value assigned outside the set by
/// zero_threshold (constant-thresholding; 0 reproduces plain zeroing).
struct ThresholdSpec {
    double alpha = 1.0;
    Eigen::VectorXd T;
    double zero_fill = 0.0;
};

/// Membership of each design point in the sublevel set.
struct SublevelResult {
    std::vector<bool> z;     // 1 iff T-feasible and f <= q_value
    double q_value = 0.0;    // realized objective quantile
    Eigen::Index n_feasible = 0;
    Eigen::Index n_in_set = 0;
};

/// Smallest scalar t >= 0, replicated across constraints, such that at
/// least min_feasible points satisfy max_l G(i,l) <= t. Zero when the
/// design already has enough feasible points.
Eigen::VectorXd auto_relax(const EvaluatedDesign& design, Eigen::Index min_feasible);

/// Indicator-thresholding. Throws DegenerateError when no point is
/// T-feasible (raise T and retry).
SublevelResult sublevel_indicator(const EvaluatedDesign& design,
                                  const ThresholdSpec& spec);

/// Zero-thresholding: f where the point is in the sublevel set,
/// spec.zero_fill elsewhere.
Eigen::VectorXd zero_threshold(const EvaluatedDesign& design,
                               const ThresholdSpec& spec);

/// Conditional-thresholding: rows of (X, f) restricted to the sublevel
/// set, original order preserved.
std::pair<Eigen::MatrixXd, Eigen::VectorXd>
conditional_subset(const EvaluatedDesign& design, const ThresholdSpec& spec);

} // namespace gosa
