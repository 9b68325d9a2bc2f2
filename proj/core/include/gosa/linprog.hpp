#pragma once

#include <Eigen/Core>

namespace gosa {

/// Dense linear program
///   minimize    c.x
///   subject to  A x <= b,  lo <= x <= hi
/// with finite bounds on every variable (the feasible set is compact, so
/// no unbounded rays exist). Sized for the optimizer's trust-region
/// subproblems: a handful of variables and rows.
struct LpProblem {
    Eigen::VectorXd c;
    Eigen::MatrixXd A; // may have zero rows
    Eigen::VectorXd b;
    Eigen::VectorXd lo;
    Eigen::VectorXd hi;
};

struct LpResult {
    bool feasible = false;
    Eigen::VectorXd x;
    double value = 0.0;
};

/// Two-phase dense simplex with Bland's rule (deterministic, cycle-free).
/// Throws NumericError only on internal failure, never for infeasibility.
LpResult lp_solve(const LpProblem& lp);

} // namespace gosa
