#pragma once

#include <Eigen/Core>

#include <string>

#include "gosa/problem.hpp"

namespace gosa {

/// Trust-region settings for the linear-approximation optimizer. Radii are
/// fractions of each coordinate's box width (the search runs on the unit
/// box internally); non-positive values select the defaults 0.1 and 1e-6.
struct DfoOptions {
    double rho_begin = 0.0;
    double rho_end = 0.0;
    int budget = 500; // objective evaluations
};

enum class RunStatus { Converged, BudgetExhausted, Degenerate };

const char* to_string(RunStatus status);

/// One optimization run: start point, best point found (feasibility-first:
/// a feasible point beats any infeasible one, infeasible points compare by
/// worst violation), call count and exit status.
struct StudyRecord {
    std::string version = "original";
    Eigen::VectorXd start;
    Eigen::VectorXd x_final;
    double f_final = 0.0;
    bool feasible = false;
    int n_calls = 0;
    RunStatus status = RunStatus::Converged;
};

/// Derivative-free constrained local minimization in the COBYLA family:
/// keeps d+1 interpolation points, fits linear models of the objective and
/// every constraint, and steps by a two-stage linear program inside an
/// inf-norm trust region (first minimize model infeasibility, then the
/// model objective at that infeasibility level). The radius shrinks from
/// rho_begin to rho_end; box bounds enter the subproblem as variable
/// bounds, so no iterate ever leaves the box. Fully deterministic.
StudyRecord dfo_minimize(const ProblemSpec& problem, const Eigen::VectorXd& x0,
                         const DfoOptions& options = {});

} // namespace gosa
