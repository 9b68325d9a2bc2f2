#include "gosa/problem.hpp"

#include <cmath>

namespace gosa {

BoxDomain::BoxDomain(Eigen::VectorXd lo, Eigen::VectorXd hi)
    : lower(std::move(lo)), upper(std::move(hi)) {
    if (lower.size() != upper.size())
        throw ShapeError("BoxDomain: lower and upper sizes differ");
    if (lower.size() < 1) throw ArgumentError("BoxDomain: dimension must be >= 1");
    for (Eigen::Index i = 0; i < lower.size(); ++i) {
        if (!(lower[i] < upper[i]))
            throw ArgumentError("BoxDomain: lower[" + std::to_string(i) +
                                "] must be < upper[" + std::to_string(i) + "]");
    }
}

bool BoxDomain::contains(const Eigen::VectorXd& x, double tol) const {
    if (x.size() != dim()) return false;
    for (Eigen::Index i = 0; i < dim(); ++i) {
        if (x[i] < lower[i] - tol || x[i] > upper[i] + tol) return false;
    }
    return true;
}

EvaluatedDesign evaluate(const ProblemSpec& problem, const Eigen::MatrixXd& X) {
    const Eigen::Index n = X.rows();
    const Eigen::Index d = problem.dim();
    const auto m = problem.n_constraints();
    if (X.cols() != d) throw ShapeError("evaluate: X has wrong column count");
    if (n < 1) throw ArgumentError("evaluate: empty design");

    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            if (X(i, j) < problem.domain.lower[j] || X(i, j) > problem.domain.upper[j])
                throw OutOfDomainError("evaluate: row " + std::to_string(i) +
                                       " dimension " + std::to_string(j) +
                                       " outside the box");
        }
    }

    EvaluatedDesign out;
    out.X = X;
    out.f.resize(n);
    out.G.resize(n, m);
    Eigen::VectorXd row(d);
    for (Eigen::Index i = 0; i < n; ++i) {
        row = X.row(i).transpose();
        const double fi = problem.objective(row);
        if (!std::isfinite(fi))
            throw NumericError("evaluate: objective non-finite at row " +
                               std::to_string(i));
        out.f[i] = fi;
        for (Eigen::Index l = 0; l < m; ++l) {
            const double gl = problem.constraints[static_cast<std::size_t>(l)](row);
            if (!std::isfinite(gl))
                throw NumericError("evaluate: constraint " + std::to_string(l) +
                                   " non-finite at row " + std::to_string(i));
            out.G(i, l) = gl;
        }
    }
    return out;
}

std::vector<bool> feasible_mask(const EvaluatedDesign& design,
                                const Eigen::VectorXd& T) {
    const Eigen::Index m = design.n_constraints();
    if (T.size() != m) throw ShapeError("feasible_mask: T length != m");
    for (Eigen::Index l = 0; l < m; ++l) {
        if (T[l] < 0.0) throw ArgumentError("feasible_mask: T must be >= 0");
    }
    std::vector<bool> mask(static_cast<std::size_t>(design.n()), true);
    for (Eigen::Index i = 0; i < design.n(); ++i) {
        for (Eigen::Index l = 0; l < m; ++l) {
            if (design.G(i, l) > T[l]) {
                mask[static_cast<std::size_t>(i)] = false;
                break;
            }
        }
    }
    return mask;
}

std::vector<bool> feasible_mask(const EvaluatedDesign& design) {
    return feasible_mask(design, Eigen::VectorXd::Zero(design.n_constraints()));
}

} // namespace gosa
