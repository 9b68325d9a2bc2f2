#include "gosa/sobol.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "gosa/errors.hpp"
#include "gosa/sampling.hpp"

namespace gosa {

namespace {

Eigen::VectorXd apply_rows(const ScalarFn& fn, const Eigen::MatrixXd& X) {
    Eigen::VectorXd y(X.rows());
    Eigen::VectorXd row(X.cols());
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        row = X.row(i).transpose();
        y[i] = fn(row);
    }
    return y;
}

SobolTable pick_freeze_core(const ScalarFn& fn, const BoxDomain& domain,
                            Eigen::Index n, Seed seed) {
    if (n < 100) throw ArgumentError("pick_freeze: N must be >= 100");
    const Eigen::Index d = domain.dim();

    const Eigen::MatrixXd A = uniform_sample(domain, n, seed.derive(0));
    const Eigen::MatrixXd B = uniform_sample(domain, n, seed.derive(1));
    const Eigen::VectorXd yA = apply_rows(fn, A);
    const Eigen::VectorXd yB = apply_rows(fn, B);

    // Pooled moments over both independent designs.
    const double mean = (yA.sum() + yB.sum()) / static_cast<double>(2 * n);
    const double var = ((yA.array() - mean).square().sum() +
                        (yB.array() - mean).square().sum()) /
                       static_cast<double>(2 * n);
    if (!(var > 0.0))
        throw DegenerateError("pick_freeze: zero output variance, indices undefined");

    SobolTable table;
    table.first.resize(d);
    table.total.resize(d);
    table.n_samples = n;
    table.estimator = "pick-freeze";

    Eigen::MatrixXd ABi = A;
    for (Eigen::Index i = 0; i < d; ++i) {
        ABi.col(i) = B.col(i);
        const Eigen::VectorXd yABi = apply_rows(fn, ABi);
        ABi.col(i) = A.col(i);

        // y_B and y_ABi share only coordinate i: their centered correlation
        // estimates V_i. y_A and y_ABi differ only in coordinate i: Jansen's
        // half mean square difference estimates Var - V_{~i}.
        double cov = 0.0;
        double jansen = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
            cov += (yB[k] - mean) * (yABi[k] - mean);
            const double diff = yA[k] - yABi[k];
            jansen += diff * diff;
        }
        table.first[i] = cov / static_cast<double>(n) / var;
        table.total[i] = jansen / (2.0 * static_cast<double>(n)) / var;
    }
    return table;
}

} // namespace

SobolTable pick_freeze_indices(const ScalarFn& fn, const BoxDomain& domain,
                               Eigen::Index n, Seed seed) {
    return pick_freeze_core(fn, domain, n, seed);
}

SobolTable pick_freeze_thresholded(const ProblemSpec& problem,
                                   const ThresholdSpec& spec, Eigen::Index n,
                                   Seed seed) {
    // Calibrate the quantile once on its own DOE; the pick-freeze stage then
    // sees a fixed sublevel set.
    const Eigen::MatrixXd Xcal = uniform_sample(problem.domain, n, seed.derive(1000));
    const EvaluatedDesign cal = evaluate(problem, Xcal);
    const SublevelResult sub = sublevel_indicator(cal, spec);
    if (sub.n_in_set < 1)
        throw DegenerateError("pick_freeze_thresholded: empty sublevel set");
    const double q = sub.q_value;

    const Eigen::VectorXd T = spec.T;
    const double fill = spec.zero_fill;
    const auto& prob = problem;
    ScalarFn composite = [&prob, T, q, fill](const Eigen::VectorXd& x) {
        for (std::size_t l = 0; l < prob.constraints.size(); ++l) {
            if (prob.constraints[l](x) > T[static_cast<Eigen::Index>(l)]) return fill;
        }
        const double f = prob.objective(x);
        return f <= q ? f : fill;
    };
    SobolTable table = pick_freeze_core(composite, problem.domain, n, seed);
    return table;
}

Eigen::VectorXd given_data_first_order(const Eigen::MatrixXd& X,
                                       const Eigen::VectorXd& y, int n_bins) {
    const Eigen::Index n = X.rows();
    const Eigen::Index d = X.cols();
    if (n_bins < 2) throw ArgumentError("given_data_first_order: need >= 2 bins");
    if (y.size() != n) throw ShapeError("given_data_first_order: y length mismatch");
    if (n < 10 * static_cast<Eigen::Index>(n_bins))
        throw ArgumentError("given_data_first_order: need n >= 10 * n_bins");

    const double mean = y.mean();
    const double var = (y.array() - mean).square().sum() / static_cast<double>(n);
    if (!(var > 0.0))
        throw DegenerateError("given_data_first_order: zero output variance");

    Eigen::VectorXd index(d);
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < d; ++j) {
        std::iota(order.begin(), order.end(), Eigen::Index{0});
        std::sort(order.begin(), order.end(), [&X, j](Eigen::Index a, Eigen::Index b) {
            return X(a, j) < X(b, j);
        });
        double between = 0.0;
        Eigen::Index start = 0;
        for (int b = 0; b < n_bins; ++b) {
            const Eigen::Index stop = (n * (b + 1)) / n_bins;
            const Eigen::Index count = stop - start;
            double sum = 0.0;
            for (Eigen::Index k = start; k < stop; ++k)
                sum += y[order[static_cast<std::size_t>(k)]];
            const double bin_mean = sum / static_cast<double>(count);
            between += static_cast<double>(count) / static_cast<double>(n) *
                       (bin_mean - mean) * (bin_mean - mean);
            start = stop;
        }
        index[j] = between / var;
    }
    return index;
}

} // namespace gosa
