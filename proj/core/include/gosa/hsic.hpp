#pragma once

#include <Eigen/Core>

#include <optional>
#include <string>
#include <vector>

#include "gosa/kernels.hpp"
#include "gosa/problem.hpp"
#include "gosa/rng.hpp"

namespace gosa {

/// Biased (V-statistic) HSIC estimator tr(K H L H) / n^2 for square
/// symmetric Gram matrices of equal size.
double hsic_biased(const Eigen::MatrixXd& K, const Eigen::MatrixXd& L);

/// Biased squared maximum mean discrepancy between two sample sets:
/// mean k(p,p') + mean k(q,q') - 2 mean k(p,q), diagonals included.
double mmd2_biased(const Eigen::MatrixXd& p_samples,
                   const Eigen::MatrixXd& q_samples, const KernelSpec& kernel);

/// Raw HSIC indices between each input column and a binary membership
/// vector (linear kernel on z). A constant z cannot carry dependence
/// information: the indices come back all zero with degenerate_z set.
struct HsicItResult {
    Eigen::VectorXd raw;
    bool degenerate_z = false;
};

/// Per-input HSIC with indicator output. Each column gets a Gaussian RBF
/// kernel at its median-heuristic bandwidth unless explicit kernels are
/// supplied.
HsicItResult hsic_it(const Eigen::MatrixXd& X, const std::vector<bool>& z);
HsicItResult hsic_it(const Eigen::MatrixXd& X, const std::vector<bool>& z,
                     const std::vector<KernelSpec>& kernel_x);

enum class Normalization { Sum, Cross };

/// Auxiliary terms for Normalization::Cross.
struct CrossNormAux {
    Eigen::VectorXd hsic_xx; // HSIC(X_i, X_i) per input
    double hsic_zz = 0.0;    // HSIC(Z, Z)
};

/// Sum mode divides by the total; cross mode by sqrt(HSIC(X_i,X_i) HSIC(Z,Z)).
Eigen::VectorXd normalize(const Eigen::VectorXd& raw, Normalization mode,
                          const std::optional<CrossNormAux>& aux = std::nullopt);

/// How points are drawn for the Gram computation when N exceeds the
/// subsample budget M. Proportional keeps every class of z at its sample
/// share but never starves the rare class below a floor, so screening on
/// tiny sublevel sets stays informative; Uniform ignores z entirely.
enum class GramSubsample { Proportional, Uniform };

struct ReplicateOptions {
    std::vector<double> alphas{0.10, 0.40, 0.70, 1.00};
    Eigen::Index n = 20000;          // DOE size per repetition
    Eigen::Index gram_subsample = 2000;
    int reps = 20;
    Eigen::Index min_feasible = 100; // auto_relax target
    Normalization norm = Normalization::Sum;
    GramSubsample scheme = GramSubsample::Proportional;
    int workers = 0;                 // 0 = hardware concurrency
};

/// Mean/std of normalized indices over repetitions, plus enough metadata
/// to replay the run.
struct IndexTable {
    std::vector<double> alphas;
    Eigen::MatrixXd mean; // d x n_alpha
    Eigen::MatrixXd stdev;
    int reps = 0;
    Eigen::Index n = 0;
    Eigen::Index gram_subsample = 0;
    Normalization norm = Normalization::Sum;
    std::string mode; // "fresh-doe" or "bootstrap"

    // Per-repetition detail: values[rep] is d x n_alpha; degenerate_z[rep][a]
    // flags repetitions whose indicator was constant at that alpha.
    std::vector<Eigen::MatrixXd> values;
    std::vector<std::vector<bool>> degenerate_z;
    std::vector<Eigen::VectorXd> relaxations;  // T per repetition
    std::vector<Eigen::VectorXd> q_values;     // per repetition, per alpha
    std::vector<std::vector<Eigen::Index>> n_in_set;

    [[nodiscard]] Eigen::Index dim() const { return mean.rows(); }
    [[nodiscard]] Eigen::Index n_alphas() const {
        return static_cast<Eigen::Index>(alphas.size());
    }
    /// Column index of an alpha level (ArgumentError if absent).
    [[nodiscard]] Eigen::Index alpha_index(double alpha) const;
};

/// Repeated HSIC-IT estimation on fresh uniform DOEs of the problem.
IndexTable replicate_indices(const ProblemSpec& problem,
                             const ReplicateOptions& options, Seed seed);

/// Given-data variant: bootstrap-resamples the supplied design instead of
/// drawing fresh points.
IndexTable replicate_indices(const EvaluatedDesign& design,
                             const ReplicateOptions& options, Seed seed);

} // namespace gosa
