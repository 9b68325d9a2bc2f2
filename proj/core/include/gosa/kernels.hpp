#pragma once

#include <Eigen/Core>

namespace gosa {

/// Positive-definite kernel choices. Samples are rows; the RBF bandwidth
/// is the Gaussian sigma in k(x,x') = exp(-|x-x'|^2 / (2 sigma^2)).
struct KernelSpec {
    enum class Kind { GaussianRbf, Linear, Polynomial };

    Kind kind = Kind::GaussianRbf;
    double sigma = 1.0; // GaussianRbf only, > 0
    int degree = 2;     // Polynomial only, >= 1

    static KernelSpec rbf(double sigma);
    static KernelSpec linear();
    static KernelSpec polynomial(int degree);
};

/// Gram matrix, entry (i,j) = k(a_i, b_j). a and b are sample matrices
/// with matching column counts (use n x 1 for scalar samples).
Eigen::MatrixXd gram(const KernelSpec& kernel, const Eigen::MatrixXd& a,
                     const Eigen::MatrixXd& b);

/// Convenience overloads for 1-D samples.
Eigen::MatrixXd gram(const KernelSpec& kernel, const Eigen::VectorXd& a,
                     const Eigen::VectorXd& b);
Eigen::MatrixXd gram(const KernelSpec& kernel, const Eigen::VectorXd& a);

/// Median-heuristic bandwidth: the order-statistic median of pairwise
/// Euclidean distances over distinct pairs. More than 2000 points are
/// reduced to a deterministic 2000-point subsample first so the cost
/// stays O(2000^2). Throws DegenerateError when the scale is zero.
double median_bandwidth(const Eigen::MatrixXd& samples);
double median_bandwidth(const Eigen::VectorXd& samples);

/// Double centering: returns H G H with H = I - (1/n) 11^T.
Eigen::MatrixXd center(const Eigen::MatrixXd& gram);

} // namespace gosa
