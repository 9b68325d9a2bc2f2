#pragma once

#include <Eigen/Core>

#include <string>

#include "gosa/problem.hpp"
#include "gosa/rng.hpp"
#include "gosa/thresholding.hpp"

namespace gosa {

/// First-order and total variance-based indices for one output.
struct SobolTable {
    Eigen::VectorXd first;
    Eigen::VectorXd total;
    Eigen::Index n_samples = 0;
    std::string estimator; // "pick-freeze" or "given-data"
};

/// Pick-freeze estimation on a callable: Sobol-Saltelli first-order form
/// with centered outputs, Jansen total form. Costs N(d+2) evaluations of fn.
SobolTable pick_freeze_indices(const ScalarFn& fn, const BoxDomain& domain,
                               Eigen::Index n, Seed seed);

/// Pick-freeze on the zero-thresholded composite output
/// Z = f * 1{X in sublevel set} + zero_fill * 1{outside}. The quantile
/// q is frozen from an initial N-point calibration DOE so the set stays
/// fixed during estimation; spec.T applies as given.
SobolTable pick_freeze_thresholded(const ProblemSpec& problem,
                                   const ThresholdSpec& spec, Eigen::Index n,
                                   Seed seed);

/// Given-data first-order indices: per input, the variance of y's
/// equal-count-bin means over the variance of y. Works on filtered
/// (conditional) samples where pick-freeze designs cannot.
Eigen::VectorXd given_data_first_order(const Eigen::MatrixXd& X,
                                       const Eigen::VectorXd& y, int n_bins = 20);

} // namespace gosa
