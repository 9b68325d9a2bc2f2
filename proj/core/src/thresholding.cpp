#include "gosa/thresholding.hpp"

#include <algorithm>
#include <vector>

#include "gosa/errors.hpp"
#include "gosa/sampling.hpp"

namespace gosa {

Eigen::VectorXd auto_relax(const EvaluatedDesign& design, Eigen::Index min_feasible) {
    const Eigen::Index n = design.n();
    const Eigen::Index m = design.n_constraints();
    if (min_feasible > n)
        throw ArgumentError("auto_relax: min_feasible exceeds design size");
    if (m == 0) return Eigen::VectorXd{};

    // Worst violation per point; its min_feasible-th order statistic is the
    // smallest admissible threshold.
    std::vector<double> worst(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        worst[static_cast<std::size_t>(i)] = design.G.row(i).maxCoeff();
    std::nth_element(worst.begin(), worst.begin() + (min_feasible - 1), worst.end());
    const double t = std::max(worst[static_cast<std::size_t>(min_feasible - 1)], 0.0);
    return Eigen::VectorXd::Constant(m, t);
}

SublevelResult sublevel_indicator(const EvaluatedDesign& design,
                                  const ThresholdSpec& spec) {
    if (!(spec.alpha > 0.0) || spec.alpha > 1.0)
        throw ArgumentError("sublevel_indicator: alpha must be in (0,1]");
    const auto mask = feasible_mask(design, spec.T);
    const Eigen::Index n = design.n();

    std::vector<double> feas_f;
    feas_f.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        if (mask[static_cast<std::size_t>(i)]) feas_f.push_back(design.f[i]);
    if (feas_f.empty())
        throw DegenerateError(
            "sublevel_indicator: no T-feasible point; raise T (see auto_relax)");

    const Eigen::Map<const Eigen::VectorXd> ff(feas_f.data(),
                                               static_cast<Eigen::Index>(feas_f.size()));
    const double q = empirical_quantile(ff, spec.alpha);

    SublevelResult out;
    out.q_value = q;
    out.n_feasible = static_cast<Eigen::Index>(feas_f.size());
    out.z.resize(static_cast<std::size_t>(n), false);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (mask[static_cast<std::size_t>(i)] && design.f[i] <= q) {
            out.z[static_cast<std::size_t>(i)] = true;
            ++out.n_in_set;
        }
    }
    return out;
}

Eigen::VectorXd zero_threshold(const EvaluatedDesign& design,
                               const ThresholdSpec& spec) {
    const auto sub = sublevel_indicator(design, spec);
    Eigen::VectorXd z(design.n());
    for (Eigen::Index i = 0; i < design.n(); ++i)
        z[i] = sub.z[static_cast<std::size_t>(i)] ? design.f[i] : spec.zero_fill;
    return z;
}

std::pair<Eigen::MatrixXd, Eigen::VectorXd>
conditional_subset(const EvaluatedDesign& design, const ThresholdSpec& spec) {
    const auto sub = sublevel_indicator(design, spec);
    if (sub.n_in_set < 1)
        throw DegenerateError("conditional_subset: empty sublevel set");
    Eigen::MatrixXd Xs(sub.n_in_set, design.dim());
    Eigen::VectorXd fs(sub.n_in_set);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < design.n(); ++i) {
        if (sub.z[static_cast<std::size_t>(i)]) {
            Xs.row(k) = design.X.row(i);
            fs[k] = design.f[i];
            ++k;
        }
    }
    return {std::move(Xs), std::move(fs)};
}

} // namespace gosa
