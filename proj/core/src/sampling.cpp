#include "gosa/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "gosa/errors.hpp"

namespace gosa {

Eigen::MatrixXd uniform_sample(const BoxDomain& domain, Eigen::Index n, Seed seed) {
    if (n < 1) throw ArgumentError("uniform_sample: N must be >= 1");
    const Eigen::Index d = domain.dim();
    Rng rng(seed);
    Eigen::MatrixXd X(n, d);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            X(i, j) = rng.uniform(domain.lower[j], domain.upper[j]);
    return X;
}

namespace {

// Squared distance between unit-space rows i and j.
double sqdist_row(const Eigen::MatrixXd& U, Eigen::Index i, Eigen::Index j) {
    return (U.row(i) - U.row(j)).squaredNorm();
}

double min_pairwise_sq(const Eigen::MatrixXd& U) {
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < U.rows(); ++i)
        for (Eigen::Index j = i + 1; j < U.rows(); ++j)
            best = std::min(best, sqdist_row(U, i, j));
    return best;
}

} // namespace

Eigen::MatrixXd lhs_maximin(const BoxDomain& domain, Eigen::Index n, Seed seed,
                            int opt_iters) {
    if (n < 2) throw ArgumentError("lhs_maximin: N must be >= 2");
    const Eigen::Index d = domain.dim();
    Rng rng(seed);

    // Stratified start: column j holds a random permutation of the n strata,
    // jittered within each stratum.  U lives in [0,1]^d.
    Eigen::MatrixXd U(n, d);
    std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < d; ++j) {
        std::iota(perm.begin(), perm.end(), Eigen::Index{0});
        for (Eigen::Index k = n - 1; k > 0; --k) {
            const auto r = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(k + 1)));
            std::swap(perm[static_cast<std::size_t>(k)], perm[static_cast<std::size_t>(r)]);
        }
        for (Eigen::Index i = 0; i < n; ++i)
            U(i, j) = (static_cast<double>(perm[static_cast<std::size_t>(i)]) + rng.uniform()) /
                      static_cast<double>(n);
    }

    // Maximin improvement by within-column row swaps; a swap that does not
    // strictly increase the global minimum distance is rolled back.
    double best = min_pairwise_sq(U);
    for (int it = 0; it < opt_iters; ++it) {
        const auto col = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(d)));
        const auto r1 = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n)));
        auto r2 = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n - 1)));
        if (r2 >= r1) ++r2;
        std::swap(U(r1, col), U(r2, col));
        const double cand = min_pairwise_sq(U);
        if (cand > best) {
            best = cand;
        } else {
            std::swap(U(r1, col), U(r2, col));
        }
    }

    Eigen::MatrixXd X(n, d);
    for (Eigen::Index j = 0; j < d; ++j)
        X.col(j) = domain.lower[j] + (domain.upper[j] - domain.lower[j]) * U.col(j).array();
    return X;
}

double empirical_quantile(const Eigen::VectorXd& values, double alpha) {
    const Eigen::Index n = values.size();
    if (n < 1) throw ArgumentError("empirical_quantile: empty vector");
    if (!(alpha > 0.0) || alpha > 1.0)
        throw ArgumentError("empirical_quantile: alpha must be in (0,1]");
    // Small backoff so alpha*n landing on an integer is not pushed up by
    // floating-point representation (0.1*100 > 10 in doubles).
    auto k = static_cast<Eigen::Index>(
        std::ceil(alpha * static_cast<double>(n) - 1e-9));
    k = std::clamp<Eigen::Index>(k, 1, n);
    std::vector<double> buf(values.data(), values.data() + n);
    std::nth_element(buf.begin(), buf.begin() + (k - 1), buf.end());
    return buf[static_cast<std::size_t>(k - 1)];
}

} // namespace gosa
