#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <vector>

#include "gosa/linprog.hpp"
#include "gosa/rng.hpp"

using namespace gosa;

namespace {

// Brute-force oracle: the optimum of a bounded LP sits on a vertex, i.e.
// the intersection of d active constraints drawn from rows and bounds.
// Enumerate all combinations, keep feasible points, take the best value.
double vertex_enumeration_min(const LpProblem& lp, bool* feasible) {
    const Eigen::Index d = lp.c.size();
    std::vector<Eigen::RowVectorXd> rows;
    std::vector<double> rhs;
    for (Eigen::Index r = 0; r < lp.A.rows(); ++r) {
        rows.emplace_back(lp.A.row(r));
        rhs.push_back(lp.b[r]);
    }
    for (Eigen::Index i = 0; i < d; ++i) {
        Eigen::RowVectorXd e = Eigen::RowVectorXd::Zero(d);
        e[i] = 1.0;
        rows.emplace_back(e);
        rhs.push_back(lp.hi[i]);
        rows.emplace_back(-e);
        rhs.push_back(-lp.lo[i]);
    }

    const auto n = static_cast<Eigen::Index>(rows.size());
    double best = std::numeric_limits<double>::infinity();
    *feasible = false;

    std::vector<Eigen::Index> pick(static_cast<std::size_t>(d));
    const auto n_combos = static_cast<std::uint64_t>(1) << n;
    for (std::uint64_t bits = 0; bits < n_combos; ++bits) {
        if (static_cast<Eigen::Index>(__builtin_popcountll(bits)) != d) continue;
        Eigen::Index k = 0;
        for (Eigen::Index r = 0; r < n; ++r)
            if (bits & (1ULL << r)) pick[static_cast<std::size_t>(k++)] = r;

        Eigen::MatrixXd M(d, d);
        Eigen::VectorXd v(d);
        for (Eigen::Index i = 0; i < d; ++i) {
            M.row(i) = rows[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])];
            v[i] = rhs[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])];
        }
        const Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
        if (!lu.isInvertible()) continue;
        const Eigen::VectorXd x = lu.solve(v);

        bool ok = true;
        for (Eigen::Index r = 0; r < n && ok; ++r)
            ok = rows[static_cast<std::size_t>(r)].dot(x) <= rhs[static_cast<std::size_t>(r)] + 1e-7;
        if (!ok) continue;
        *feasible = true;
        best = std::min(best, lp.c.dot(x));
    }
    return best;
}

LpProblem random_lp(Eigen::Index d, Eigen::Index m, Rng& rng) {
    LpProblem lp;
    lp.c.resize(d);
    for (Eigen::Index i = 0; i < d; ++i) lp.c[i] = rng.uniform(-2.0, 2.0);
    lp.lo = Eigen::VectorXd::Constant(d, -1.0);
    lp.hi = Eigen::VectorXd::Constant(d, 1.0);
    lp.A.resize(m, d);
    lp.b.resize(m);
    for (Eigen::Index r = 0; r < m; ++r) {
        for (Eigen::Index i = 0; i < d; ++i) lp.A(r, i) = rng.uniform(-1.0, 1.0);
        lp.b[r] = rng.uniform(-0.8, 1.5);
    }
    return lp;
}

} // namespace

TEST_CASE("bounds-only LP lands on the right corner") {
    LpProblem lp;
    lp.c = Eigen::Vector2d(1.0, -2.0);
    lp.A.resize(0, 2);
    lp.b.resize(0);
    lp.lo = Eigen::Vector2d(-1.0, -1.0);
    lp.hi = Eigen::Vector2d(2.0, 3.0);
    const auto r = lp_solve(lp);
    REQUIRE(r.feasible);
    CHECK(r.x[0] == doctest::Approx(-1.0));
    CHECK(r.x[1] == doctest::Approx(3.0));
    CHECK(r.value == doctest::Approx(-7.0));
}

TEST_CASE("single halfspace cuts the corner") {
    // min -x - y subject to x + y <= 1 on [0,1]^2.
    LpProblem lp;
    lp.c = Eigen::Vector2d(-1.0, -1.0);
    lp.A.resize(1, 2);
    lp.A << 1.0, 1.0;
    lp.b = Eigen::VectorXd::Constant(1, 1.0);
    lp.lo = Eigen::Vector2d(0.0, 0.0);
    lp.hi = Eigen::Vector2d(1.0, 1.0);
    const auto r = lp_solve(lp);
    REQUIRE(r.feasible);
    CHECK(r.value == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(r.x[0] + r.x[1] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("negative RHS needs phase one") {
    // x >= 0.5 written as -x <= -0.5.
    LpProblem lp;
    lp.c = Eigen::VectorXd::Constant(1, 1.0);
    lp.A.resize(1, 1);
    lp.A << -1.0;
    lp.b = Eigen::VectorXd::Constant(1, -0.5);
    lp.lo = Eigen::VectorXd::Constant(1, 0.0);
    lp.hi = Eigen::VectorXd::Constant(1, 2.0);
    const auto r = lp_solve(lp);
    REQUIRE(r.feasible);
    CHECK(r.x[0] == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("infeasible LP is reported, not thrown") {
    LpProblem lp;
    lp.c = Eigen::VectorXd::Constant(1, 1.0);
    lp.A.resize(1, 1);
    lp.A << -1.0;
    lp.b = Eigen::VectorXd::Constant(1, -5.0); // x >= 5 but x <= 2
    lp.lo = Eigen::VectorXd::Constant(1, 0.0);
    lp.hi = Eigen::VectorXd::Constant(1, 2.0);
    CHECK_FALSE(lp_solve(lp).feasible);
}

TEST_CASE("simplex agrees with vertex enumeration on random LPs") {
    Rng rng(Seed{60, 0});
    int feasible_seen = 0;
    int infeasible_seen = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::Index d = 2 + static_cast<Eigen::Index>(rng.below(2));
        const Eigen::Index m = static_cast<Eigen::Index>(rng.below(5));
        const auto lp = random_lp(d, m, rng);

        bool oracle_feasible = false;
        const double oracle = vertex_enumeration_min(lp, &oracle_feasible);
        const auto r = lp_solve(lp);

        CHECK(r.feasible == oracle_feasible);
        if (oracle_feasible && r.feasible) {
            ++feasible_seen;
            CHECK(r.value == doctest::Approx(oracle).epsilon(1e-7));
            for (Eigen::Index row = 0; row < lp.A.rows(); ++row)
                CHECK(lp.A.row(row).dot(r.x) <= lp.b[row] + 1e-7);
            for (Eigen::Index i = 0; i < d; ++i) {
                CHECK(r.x[i] >= lp.lo[i] - 1e-9);
                CHECK(r.x[i] <= lp.hi[i] + 1e-9);
            }
        } else {
            ++infeasible_seen;
        }
    }
    // The generator must exercise both branches.
    CHECK(feasible_seen >= 50);
    CHECK(infeasible_seen >= 5);
}
