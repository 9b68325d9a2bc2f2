#pragma once

#include <Eigen/Core>

#include <string>
#include <vector>

#include "gosa/problem.hpp"

namespace gosa {
namespace benchmarks {

/// Dixon-Price, d=2, unconstrained, box [-10,10]^2:
/// f = (X1-1)^2 + 2(2 X2^2 - X1)^2. Analytic minimum 0 at (1, 1/sqrt(2)).
ProblemSpec dixon_price();

/// f = X1 + 2 X2 on [-10,10]^2. Minimum -30 at (-10,-10).
ProblemSpec linear2d();

/// Piecewise level function on [-5,5]^2: |X1| where |X1| > q, else
/// |X2 - 2| - 6. Only X1 decides membership of sublevel sets above q.
ProblemSpec level_fn(double q = 2.3);

/// Twisted strip on [-1,1]^2 with X' = X - c:
/// 10 - (|X1'| - A)^2 - eps X2' X1' where |X1| >= A, else 10 - eps X2' X1'.
/// Global minimum at (-1,-1), local one near (1,1).
ProblemSpec twisted_strip(Eigen::Vector2d c = {0.1, 0.1}, double A = 0.2,
                          double eps = 0.1);

/// Gas Transmission Compressor Design, d=4, one constraint.
ProblemSpec gtcd();

/// Welded Beam, d=4, five constraints (shear stress, bending stress,
/// geometry, buckling load, deflection).
ProblemSpec wb4();

/// Published reference data for a catalog entry. best_f / best_x /
/// feasible_volume_pct reproduce the literature values as reported; see
/// the catalog tests for what the formulas actually measure.
struct CatalogEntry {
    std::string name;
    Eigen::Index dim = 0;
    Eigen::Index n_constraints = 0;
    double best_f = 0.0;
    Eigen::VectorXd best_x;
    double feasible_volume_pct = 100.0;
    ProblemSpec (*factory)() = nullptr;
};

/// All benchmarks addressable by CLI name: dixon-price, linear2d, level,
/// twisted-strip, gtcd, wb4.
const std::vector<CatalogEntry>& catalog();

/// Factory lookup by name (ArgumentError on unknown names).
ProblemSpec by_name(const std::string& name);

} // namespace benchmarks
} // namespace gosa
