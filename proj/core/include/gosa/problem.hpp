#pragma once

#include <Eigen/Core>

#include <functional>
#include <string>
#include <vector>

#include "gosa/errors.hpp"

namespace gosa {

using ScalarFn = std::function<double(const Eigen::VectorXd&)>;

/// Axis-aligned search box. Inputs are independently uniform over it.
struct BoxDomain {
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;

    BoxDomain() = default;
    BoxDomain(Eigen::VectorXd lo, Eigen::VectorXd hi);

    [[nodiscard]] Eigen::Index dim() const { return lower.size(); }
    [[nodiscard]] double width(Eigen::Index i) const { return upper[i] - lower[i]; }
    [[nodiscard]] double min_width() const { return (upper - lower).minCoeff(); }
    [[nodiscard]] bool contains(const Eigen::VectorXd& x, double tol = 0.0) const;
};

/// Constrained minimization problem: minimize objective over the box
/// subject to every constraint value <= 0.
struct ProblemSpec {
    std::string name;
    ScalarFn objective;
    std::vector<ScalarFn> constraints;
    BoxDomain domain;

    [[nodiscard]] Eigen::Index dim() const { return domain.dim(); }
    [[nodiscard]] Eigen::Index n_constraints() const {
        return static_cast<Eigen::Index>(constraints.size());
    }
};

/// A batch of evaluated points: rows of X aligned with objective values f
/// and constraint values G (N x m).
struct EvaluatedDesign {
    Eigen::MatrixXd X;
    Eigen::VectorXd f;
    Eigen::MatrixXd G;

    [[nodiscard]] Eigen::Index n() const { return X.rows(); }
    [[nodiscard]] Eigen::Index dim() const { return X.cols(); }
    [[nodiscard]] Eigen::Index n_constraints() const { return G.cols(); }
};

/// Evaluates objective and constraints on every row of X.
/// Throws OutOfDomainError (naming row and dimension) if a row leaves the
/// box, NumericError if an evaluation returns a non-finite value.
EvaluatedDesign evaluate(const ProblemSpec& problem, const Eigen::MatrixXd& X);

/// mask[i] is true iff G(i,l) <= T[l] for all l. T must be >= 0 and of
/// length m (ShapeError otherwise). m = 0 yields all-true.
std::vector<bool> feasible_mask(const EvaluatedDesign& design,
                                const Eigen::VectorXd& T);

/// feasible_mask with T = 0.
std::vector<bool> feasible_mask(const EvaluatedDesign& design);

} // namespace gosa
