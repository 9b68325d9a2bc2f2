#pragma once

#include <Eigen/Core>

#include <vector>

#include "gosa/hsic.hpp"
#include "gosa/problem.hpp"
#include "gosa/rng.hpp"

namespace gosa {

/// Partition of inputs into active optimization variables and frozen ones
/// with their fixed values. classify() leaves the values unset; a
/// freeze_values() call (or manual assignment) completes them.
struct Screening {
    std::vector<Eigen::Index> active;
    std::vector<Eigen::Index> frozen;
    Eigen::VectorXd frozen_values; // aligned with `frozen`, may be empty
    double tau = 0.0;
    double alpha_sel = 0.0;

    [[nodiscard]] bool values_set() const {
        return frozen_values.size() == static_cast<Eigen::Index>(frozen.size());
    }
};

/// Marks input i frozen when its mean index at alpha_sel falls below
/// tau = factor * max_j mean index(j). The argmax input is always active.
Screening classify(const IndexTable& table, double alpha_sel, double factor = 0.1);

enum class FreezeStrategy { Random, Greedy };

/// Fills in the frozen coordinates: Random draws each one uniformly from
/// its interval; Greedy copies them from the best strictly feasible design
/// row (lowest f, ties broken by lowest row index).
Screening freeze_values(FreezeStrategy strategy, Screening screening,
                        const BoxDomain& domain, const EvaluatedDesign& design,
                        Seed seed);

/// Restriction of the problem to the active subspace: frozen coordinates
/// are injected before every objective/constraint call, and the box keeps
/// only the active dimensions.
ProblemSpec reduce(const ProblemSpec& problem, const Screening& screening);

/// Embeds a reduced-space point back into the full space.
Eigen::VectorXd merge_point(const Screening& screening, Eigen::Index full_dim,
                            const Eigen::VectorXd& active_values);

} // namespace gosa
