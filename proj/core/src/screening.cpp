#include "gosa/screening.hpp"

#include <algorithm>
#include <memory>

#include "gosa/errors.hpp"

namespace gosa {

Screening classify(const IndexTable& table, double alpha_sel, double factor) {
    if (!(factor > 0.0) || !(factor < 1.0))
        throw ArgumentError("classify: factor must be in (0,1)");
    const Eigen::Index a = table.alpha_index(alpha_sel);
    const Eigen::VectorXd idx = table.mean.col(a);

    Eigen::Index argmax = 0;
    idx.maxCoeff(&argmax);

    Screening s;
    s.alpha_sel = alpha_sel;
    s.tau = factor * idx[argmax];
    for (Eigen::Index i = 0; i < idx.size(); ++i) {
        if (i != argmax && idx[i] < s.tau)
            s.frozen.push_back(i);
        else
            s.active.push_back(i);
    }
    return s;
}

Screening freeze_values(FreezeStrategy strategy, Screening screening,
                        const BoxDomain& domain, const EvaluatedDesign& design,
                        Seed seed) {
    const auto n_frozen = static_cast<Eigen::Index>(screening.frozen.size());
    screening.frozen_values.resize(n_frozen);

    if (strategy == FreezeStrategy::Random) {
        Rng rng(seed);
        for (Eigen::Index k = 0; k < n_frozen; ++k) {
            const Eigen::Index j = screening.frozen[static_cast<std::size_t>(k)];
            screening.frozen_values[k] = rng.uniform(domain.lower[j], domain.upper[j]);
        }
        return screening;
    }

    // Greedy: best strictly feasible design row.
    const auto mask = feasible_mask(design);
    Eigen::Index best = -1;
    for (Eigen::Index i = 0; i < design.n(); ++i) {
        if (!mask[static_cast<std::size_t>(i)]) continue;
        if (best < 0 || design.f[i] < design.f[best]) best = i;
    }
    if (best < 0)
        throw InfeasibleError(
            "freeze_values: no feasible design point for the greedy strategy; "
            "rerun with a larger design or relaxed constraints");
    for (Eigen::Index k = 0; k < n_frozen; ++k)
        screening.frozen_values[k] = design.X(best, screening.frozen[static_cast<std::size_t>(k)]);
    return screening;
}

Eigen::VectorXd merge_point(const Screening& screening, Eigen::Index full_dim,
                            const Eigen::VectorXd& active_values) {
    if (!screening.values_set())
        throw ArgumentError("merge_point: frozen values not set");
    if (active_values.size() != static_cast<Eigen::Index>(screening.active.size()))
        throw ShapeError("merge_point: active value count mismatch");
    Eigen::VectorXd x(full_dim);
    for (std::size_t k = 0; k < screening.active.size(); ++k)
        x[screening.active[k]] = active_values[static_cast<Eigen::Index>(k)];
    for (std::size_t k = 0; k < screening.frozen.size(); ++k)
        x[screening.frozen[k]] = screening.frozen_values[static_cast<Eigen::Index>(k)];
    return x;
}

ProblemSpec reduce(const ProblemSpec& problem, const Screening& screening) {
    if (screening.active.empty())
        throw ArgumentError("reduce: active set is empty");
    if (!screening.values_set())
        throw ArgumentError("reduce: frozen values not set");

    const Eigen::Index d = problem.dim();
    const auto n_active = static_cast<Eigen::Index>(screening.active.size());

    // Shared by all reduced callables; copying the screening keeps the
    // reduced problem self-contained.
    auto shared = std::make_shared<const Screening>(screening);

    ProblemSpec reduced;
    reduced.name = problem.name + "-reduced";
    Eigen::VectorXd lo(n_active);
    Eigen::VectorXd hi(n_active);
    for (Eigen::Index k = 0; k < n_active; ++k) {
        lo[k] = problem.domain.lower[screening.active[static_cast<std::size_t>(k)]];
        hi[k] = problem.domain.upper[screening.active[static_cast<std::size_t>(k)]];
    }
    reduced.domain = BoxDomain(lo, hi);

    const ScalarFn objective = problem.objective;
    reduced.objective = [objective, shared, d](const Eigen::VectorXd& y) {
        return objective(merge_point(*shared, d, y));
    };
    for (const auto& g : problem.constraints) {
        reduced.constraints.push_back([g, shared, d](const Eigen::VectorXd& y) {
            return g(merge_point(*shared, d, y));
        });
    }
    return reduced;
}

} // namespace gosa
