#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gosa/benchmarks.hpp"
#include "gosa/errors.hpp"
#include "gosa/sampling.hpp"

using namespace gosa;
using namespace gosa::benchmarks;

namespace {

double call(const ProblemSpec& p, std::initializer_list<double> coords) {
    Eigen::VectorXd x(static_cast<Eigen::Index>(coords.size()));
    Eigen::Index i = 0;
    for (double c : coords) x[i++] = c;
    return p.objective(x);
}

} // namespace

TEST_CASE("dixon-price values") {
    const auto p = dixon_price();
    CHECK(call(p, {1.0, 1.0 / std::sqrt(2.0)}) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(call(p, {1.0, 1.0}) == 2.0);
    CHECK(call(p, {0.0, 0.0}) == 1.0);
}

TEST_CASE("linear2d values") {
    const auto p = linear2d();
    CHECK(call(p, {0.0, 0.0}) == 0.0);
    CHECK(call(p, {1.0, 2.0}) == 5.0);
    CHECK(call(p, {-10.0, -10.0}) == -30.0); // box minimum
}

TEST_CASE("level function branches") {
    const auto p = level_fn();
    CHECK(call(p, {3.0, 0.0}) == 3.0);
    CHECK(call(p, {0.0, 2.0}) == -6.0);
    CHECK(call(p, {0.0, -4.0}) == 0.0);
}

TEST_CASE("twisted strip values and optimum ordering") {
    const auto p = twisted_strip();
    CHECK(call(p, {-1.0, -1.0}) == doctest::Approx(9.069).epsilon(1e-12));
    CHECK(call(p, {1.0, 1.0}) == doctest::Approx(9.429).epsilon(1e-12));
    CHECK(call(p, {-1.0, -1.0}) < call(p, {1.0, 1.0}));
    CHECK(call(p, {-1.0, -1.0}) < call(p, {-1.0, 1.0}));
}

TEST_CASE("GTCD objective and constraint") {
    const auto p = gtcd();
    CHECK(call(p, {49.99, 1.178, 24.59, 0.389}) ==
          doctest::Approx(2964893.85).epsilon(1e-3));
    Eigen::VectorXd x(4);
    x << 30.0, 2.0, 30.0, 1.0;
    CHECK(p.constraints[0](x) == doctest::Approx(-0.5));
}

TEST_CASE("WB4 objective and helper values") {
    const auto p = wb4();
    CHECK(call(p, {0.206, 3.473, 9.037, 0.206}) ==
          doctest::Approx(1.7250).epsilon(5e-3));

    // sigma(X) = 504000 / (X3^2 X4) via g2 = sigma - 30000.
    Eigen::VectorXd x(4);
    x << 1.0, 1.0, 10.0, 10.0;
    CHECK(p.constraints[1](x) == doctest::Approx(504.0 - 30000.0).epsilon(1e-12));

    // tau1 = 6000/sqrt(2) at X1 = X2 = 1 dominates tau there; check through
    // a direct, separately coded expression of Appendix-style terms.
    const double tau1 = 6000.0 / std::sqrt(2.0);
    CHECK(tau1 == doctest::Approx(4242.6407).epsilon(1e-6));
}

TEST_CASE("published best points are near-feasible") {
    // Coordinates are published to 3-4 significant digits, so allow the
    // rounding to leak slightly across the boundary.
    const auto g = gtcd();
    Eigen::VectorXd xg(4);
    xg << 49.99, 1.178, 24.59, 0.389;
    for (const auto& c : g.constraints) CHECK(c(xg) <= 1e-2);

    const auto w = wb4();
    Eigen::VectorXd xw(4);
    xw << 0.206, 3.473, 9.037, 0.206;
    for (const auto& c : w.constraints) CHECK(c(xw) <= 1e-2);
}

TEST_CASE("GTCD feasible volume estimate") {
    const auto p = gtcd();
    const auto X = uniform_sample(p.domain, 100000, Seed{90, 0});
    const auto design = evaluate(p, X);
    const auto mask = feasible_mask(design);
    double count = 0;
    for (bool b : mask) count += b ? 1.0 : 0.0;
    const double pct = 100.0 * count / static_cast<double>(design.n());
    CHECK(pct == doctest::Approx(52.38).epsilon(0.02)); // Monte Carlo bracket ~1%
}

TEST_CASE("WB4 feasible volume measured from the formulas") {
    // The published table reports 5.6e-2 % for this problem, which does not
    // match these constraint expressions on the stated box: direct Monte
    // Carlo gives about 39.6%. The catalog keeps the published number as
    // reference metadata; this test pins what the formulas actually do.
    const auto p = wb4();
    const auto X = uniform_sample(p.domain, 100000, Seed{91, 0});
    const auto design = evaluate(p, X);
    const auto mask = feasible_mask(design);
    double count = 0;
    for (bool b : mask) count += b ? 1.0 : 0.0;
    const double pct = 100.0 * count / static_cast<double>(design.n());
    CHECK(pct == doctest::Approx(39.6).epsilon(0.03));
}

TEST_CASE("catalog lookup") {
    CHECK(by_name("gtcd").name == "gtcd");
    CHECK(by_name("twisted-strip").dim() == 2);
    CHECK_THROWS_AS(by_name("nope"), ArgumentError);

    for (const auto& entry : catalog()) {
        const auto p = entry.factory();
        CHECK(p.dim() == entry.dim);
        CHECK(p.n_constraints() == entry.n_constraints);
        CHECK(p.name == entry.name);
    }
}

TEST_CASE("catalog carries the published reference data") {
    for (const auto& entry : catalog()) {
        if (entry.name == "gtcd") {
            CHECK(entry.best_f == 2964893.85);
            CHECK(entry.feasible_volume_pct == 52.38);
            CHECK(entry.best_x[0] == 49.99);
            CHECK(entry.best_x[3] == 0.389);
        }
        if (entry.name == "wb4") {
            CHECK(entry.best_f == 1.7250);
            CHECK(entry.feasible_volume_pct == 5.6e-2);
            CHECK(entry.best_x[2] == 9.037);
        }
        if (entry.name == "dixon-price") {
            // Analytic optimum; see the value tests above.
            CHECK(entry.best_f == 0.0);
            CHECK(entry.best_x[1] == 1.0 / std::sqrt(2.0));
        }
    }
}
