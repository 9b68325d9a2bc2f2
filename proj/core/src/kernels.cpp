#include "gosa/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gosa/errors.hpp"
#include "gosa/rng.hpp"

namespace gosa {

KernelSpec KernelSpec::rbf(double sigma) {
    if (!(sigma > 0.0)) throw ArgumentError("KernelSpec: sigma must be > 0");
    return KernelSpec{Kind::GaussianRbf, sigma, 2};
}

KernelSpec KernelSpec::linear() { return KernelSpec{Kind::Linear, 1.0, 2}; }

KernelSpec KernelSpec::polynomial(int degree) {
    if (degree < 1) throw ArgumentError("KernelSpec: degree must be >= 1");
    return KernelSpec{Kind::Polynomial, 1.0, degree};
}

namespace {

double eval_kernel(const KernelSpec& k, const Eigen::RowVectorXd& x,
                   const Eigen::RowVectorXd& y) {
    switch (k.kind) {
        case KernelSpec::Kind::GaussianRbf:
            return std::exp(-(x - y).squaredNorm() / (2.0 * k.sigma * k.sigma));
        case KernelSpec::Kind::Linear:
            return x.dot(y);
        case KernelSpec::Kind::Polynomial:
            return std::pow(1.0 + x.dot(y), k.degree);
    }
    return 0.0;
}

} // namespace

Eigen::MatrixXd gram(const KernelSpec& kernel, const Eigen::MatrixXd& a,
                     const Eigen::MatrixXd& b) {
    if (a.cols() != b.cols())
        throw ShapeError("gram: sample dimensions differ");
    if (kernel.kind == KernelSpec::Kind::GaussianRbf && !(kernel.sigma > 0.0))
        throw ArgumentError("gram: RBF bandwidth must be > 0");

    Eigen::MatrixXd G(a.rows(), b.rows());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        const Eigen::RowVectorXd xi = a.row(i);
        for (Eigen::Index j = 0; j < b.rows(); ++j)
            G(i, j) = eval_kernel(kernel, xi, b.row(j));
    }
    return G;
}

Eigen::MatrixXd gram(const KernelSpec& kernel, const Eigen::VectorXd& a,
                     const Eigen::VectorXd& b) {
    return gram(kernel, Eigen::MatrixXd(a), Eigen::MatrixXd(b));
}

Eigen::MatrixXd gram(const KernelSpec& kernel, const Eigen::VectorXd& a) {
    return gram(kernel, a, a);
}

double median_bandwidth(const Eigen::MatrixXd& samples) {
    const Eigen::Index n = samples.rows();
    if (n < 2) throw ArgumentError("median_bandwidth: need at least two samples");

    // Deterministic subsample above the pair-count cap; the internal seed is
    // fixed so the heuristic stays reproducible.
    constexpr Eigen::Index kMaxPoints = 2000;
    Eigen::MatrixXd pts;
    if (n > kMaxPoints) {
        Rng rng(Seed{0x9e3779b97f4a7c15ULL, 77});
        std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
        for (Eigen::Index i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
        for (Eigen::Index i = 0; i < kMaxPoints; ++i) {
            const auto j = i + static_cast<Eigen::Index>(
                                   rng.below(static_cast<std::uint64_t>(n - i)));
            std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
        }
        pts.resize(kMaxPoints, samples.cols());
        for (Eigen::Index i = 0; i < kMaxPoints; ++i)
            pts.row(i) = samples.row(idx[static_cast<std::size_t>(i)]);
    } else {
        pts = samples;
    }

    const Eigen::Index m = pts.rows();
    std::vector<double> dist;
    dist.reserve(static_cast<std::size_t>(m * (m - 1) / 2));
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = i + 1; j < m; ++j)
            dist.push_back((pts.row(i) - pts.row(j)).norm());

    const std::size_t k = (dist.size() + 1) / 2; // ceil(c/2)-th order statistic
    std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k - 1),
                     dist.end());
    const double med = dist[k - 1];
    if (!(med > 0.0))
        throw DegenerateError("median_bandwidth: zero pairwise scale");
    return med;
}

double median_bandwidth(const Eigen::VectorXd& samples) {
    return median_bandwidth(Eigen::MatrixXd(samples));
}

Eigen::MatrixXd center(const Eigen::MatrixXd& G) {
    if (G.rows() != G.cols()) throw ShapeError("center: matrix must be square");
    const Eigen::VectorXd row_mean = G.rowwise().mean();
    const Eigen::VectorXd col_mean = G.colwise().mean();
    const double grand = G.mean();
    Eigen::MatrixXd C = G;
    C.colwise() -= row_mean;
    C.rowwise() -= col_mean.transpose();
    C.array() += grand;
    return C;
}

} // namespace gosa
