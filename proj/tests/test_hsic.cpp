#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "gosa/benchmarks.hpp"
#include "gosa/csv.hpp"
#include "gosa/errors.hpp"
#include "gosa/hsic.hpp"
#include "gosa/sampling.hpp"
#include "gosa/thresholding.hpp"

using namespace gosa;

namespace {

// Independent oracle: build H explicitly, take the centered double sum
// (1/n^2) sum_ij (HKH)_ij (HLH)_ij via full matrix products.
double hsic_oracle(const Eigen::MatrixXd& K, const Eigen::MatrixXd& L) {
    const Eigen::Index n = K.rows();
    const Eigen::MatrixXd H =
        Eigen::MatrixXd::Identity(n, n) -
        Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
    const Eigen::MatrixXd Kc = H * K * H;
    const Eigen::MatrixXd Lc = H * L * H;
    double sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) sum += Kc(i, j) * Lc(i, j);
    return sum / static_cast<double>(n * n);
}

Eigen::MatrixXd random_gram(Eigen::Index n, Rng& rng) {
    Eigen::VectorXd x(n);
    for (Eigen::Index i = 0; i < n; ++i) x[i] = rng.uniform(-2.0, 2.0);
    return gram(KernelSpec::rbf(rng.uniform(0.3, 2.0)), x);
}

} // namespace

TEST_CASE("hsic_biased of a constant kernel is zero") {
    Rng rng(Seed{40, 0});
    const auto K = random_gram(20, rng);
    const Eigen::MatrixXd L = Eigen::MatrixXd::Constant(20, 20, 2.5);
    CHECK(std::abs(hsic_biased(K, L)) <= 1e-14);
}

TEST_CASE("hsic_biased of identity grams") {
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(2, 2);
    CHECK(hsic_biased(I, I) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("hsic_biased matches the centered double-sum oracle") {
    Rng rng(Seed{41, 0});
    for (int trial = 0; trial < 10; ++trial) {
        const auto n = static_cast<Eigen::Index>(20 + rng.below(40));
        const auto K = random_gram(n, rng);
        const auto L = random_gram(n, rng);
        const double expected = hsic_oracle(K, L);
        CHECK(hsic_biased(K, L) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("hsic_biased symmetry and shape checks") {
    Rng rng(Seed{42, 0});
    const auto K = random_gram(30, rng);
    const auto L = random_gram(30, rng);
    CHECK(std::abs(hsic_biased(K, L) - hsic_biased(L, K)) <= 1e-12);
    CHECK(hsic_biased(K, L) >= -1e-12);
    CHECK_THROWS_AS(hsic_biased(K, random_gram(10, rng)), ShapeError);
}

TEST_CASE("mmd2_biased basics") {
    Rng rng(Seed{43, 0});
    Eigen::MatrixXd p(12, 1);
    for (Eigen::Index i = 0; i < p.rows(); ++i) p(i, 0) = rng.uniform(-1.0, 1.0);

    SUBCASE("identical sample sets give zero") {
        CHECK(std::abs(mmd2_biased(p, p, KernelSpec::rbf(0.8))) <= 1e-12);
    }
    SUBCASE("singleton value") {
        Eigen::MatrixXd a(1, 1);
        Eigen::MatrixXd b(1, 1);
        a << 0.0;
        b << 1.0;
        const double expected = 2.0 - 2.0 * std::exp(-0.5);
        CHECK(mmd2_biased(a, b, KernelSpec::rbf(1.0)) ==
              doctest::Approx(expected).epsilon(1e-12));
    }
    SUBCASE("nonnegative for PSD kernels") {
        Eigen::MatrixXd q(7, 1);
        for (Eigen::Index i = 0; i < q.rows(); ++i) q(i, 0) = rng.uniform(0.0, 3.0);
        CHECK(mmd2_biased(p, q, KernelSpec::rbf(1.2)) >= -1e-12);
    }
    SUBCASE("empty sets are rejected") {
        Eigen::MatrixXd empty(0, 1);
        CHECK_THROWS_AS(mmd2_biased(empty, p, KernelSpec::rbf(1.0)), ArgumentError);
    }
}

TEST_CASE("hsic_it flags constant indicators") {
    Rng rng(Seed{44, 0});
    Eigen::MatrixXd X(50, 2);
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        X(i, 0) = rng.uniform(0.0, 1.0);
        X(i, 1) = rng.uniform(0.0, 1.0);
    }
    const std::vector<bool> all_ones(50, true);
    const auto result = hsic_it(X, all_ones);
    CHECK(result.degenerate_z);
    CHECK(result.raw.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("hsic_it vanishes on an independent input") {
    // z driven by column 0 only; column 1 is pure noise.
    Rng rng(Seed{45, 0});
    const Eigen::Index n = 4000;
    Eigen::MatrixXd X(n, 2);
    std::vector<bool> z(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        X(i, 0) = rng.uniform(-1.0, 1.0);
        X(i, 1) = rng.uniform(-1.0, 1.0);
        z[static_cast<std::size_t>(i)] = X(i, 0) < -0.4;
    }
    const auto result = hsic_it(X, z);
    REQUIRE_FALSE(result.degenerate_z);
    CHECK(result.raw[1] <= 0.10 * result.raw[0]);
}

TEST_CASE("hsic_it ranks Dixon-Price inputs at the 20% level") {
    const auto problem = benchmarks::dixon_price();
    const auto design =
        evaluate(problem, uniform_sample(problem.domain, 2000, Seed{46, 0}));
    ThresholdSpec spec;
    spec.alpha = 0.2;
    const auto sub = sublevel_indicator(design, spec);
    const auto result = hsic_it(design.X, sub.z);
    REQUIRE_FALSE(result.degenerate_z);
    CHECK(result.raw[1] > result.raw[0]);
}

TEST_CASE("normalize") {
    Eigen::VectorXd raw(2);
    raw << 0.3, 0.1;

    SUBCASE("sum mode") {
        const auto n = normalize(raw, Normalization::Sum);
        CHECK(n[0] == doctest::Approx(0.75).epsilon(1e-12));
        CHECK(n[1] == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(n.sum() == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("uniform raw splits evenly") {
        const auto n = normalize(Eigen::VectorXd::Constant(4, 0.2), Normalization::Sum);
        for (Eigen::Index i = 0; i < 4; ++i)
            CHECK(n[i] == doctest::Approx(0.25).epsilon(1e-12));
    }
    SUBCASE("degenerate sum") {
        CHECK_THROWS_AS(normalize(Eigen::VectorXd::Zero(3), Normalization::Sum),
                        DegenerateError);
    }
    SUBCASE("cross mode") {
        CrossNormAux aux;
        aux.hsic_xx = Eigen::VectorXd::Constant(2, 4.0);
        aux.hsic_zz = 0.25;
        const auto n = normalize(raw, Normalization::Cross, aux);
        CHECK(n[0] == doctest::Approx(0.3).epsilon(1e-12));
        CHECK(n[1] == doctest::Approx(0.1).epsilon(1e-12));
        CHECK_THROWS_AS(normalize(raw, Normalization::Cross), ArgumentError);
    }
}

TEST_CASE("replicate_indices on the level function") {
    const auto problem = benchmarks::level_fn();
    ReplicateOptions options;
    options.n = 3000;
    options.gram_subsample = 600;
    options.reps = 5;
    const auto table = replicate_indices(problem, options, Seed{47, 0});

    REQUIRE(table.dim() == 2);
    REQUIRE(table.n_alphas() == 4);
    CHECK(table.mode == "fresh-doe");

    // Sum normalization within each non-degenerate repetition.
    for (int r = 0; r < options.reps; ++r) {
        for (Eigen::Index a = 0; a < table.n_alphas(); ++a) {
            if (table.degenerate_z[static_cast<std::size_t>(r)][static_cast<std::size_t>(a)])
                continue;
            CHECK(table.values[static_cast<std::size_t>(r)].col(a).sum() ==
                  doctest::Approx(1.0).epsilon(1e-9));
        }
    }

    // Above the level crossing (alpha = 0.7) only X1 matters.
    const auto a07 = table.alpha_index(0.70);
    CHECK(table.mean(1, a07) <= 0.05);

    // At alpha = 1.0 the unconstrained indicator is constant: degenerate.
    const auto a100 = table.alpha_index(1.00);
    for (int r = 0; r < options.reps; ++r)
        CHECK(table.degenerate_z[static_cast<std::size_t>(r)][static_cast<std::size_t>(a100)]);

    CHECK_THROWS_AS(table.alpha_index(0.5), ArgumentError);
}

TEST_CASE("replicate_indices is deterministic and worker-count independent") {
    const auto problem = benchmarks::level_fn();
    ReplicateOptions options;
    options.n = 800;
    options.gram_subsample = 300;
    options.reps = 4;
    options.workers = 1;
    const auto a = replicate_indices(problem, options, Seed{48, 0});
    options.workers = 4;
    const auto b = replicate_indices(problem, options, Seed{48, 0});
    CHECK(a.mean == b.mean);
    CHECK(a.stdev == b.stdev);
}

TEST_CASE("index table CSV schema") {
    const auto problem = benchmarks::level_fn();
    ReplicateOptions options;
    options.n = 600;
    options.gram_subsample = 200;
    options.reps = 2;
    options.alphas = {0.3, 0.8};
    const auto table = replicate_indices(problem, options, Seed{49, 5});

    std::stringstream out;
    write_index_table_csv(out, table);
    std::string header;
    std::getline(out, header);
    CHECK(header == "input,alpha,mean,std,reps,N,M,normalization");
    int rows = 0;
    std::string line;
    std::string last_row;
    while (std::getline(out, line)) {
        if (line.empty()) continue;
        ++rows;
        last_row = line;
    }
    CHECK(rows == 2 * 2); // inputs x alphas
    CHECK(last_row.find("sum") != std::string::npos);
}

TEST_CASE("replicate_indices bootstrap mode") {
    const auto problem = benchmarks::dixon_price();
    const auto design =
        evaluate(problem, uniform_sample(problem.domain, 1500, Seed{49, 0}));
    ReplicateOptions options;
    options.gram_subsample = 400;
    options.reps = 4;
    options.alphas = {0.2, 0.6};
    const auto table = replicate_indices(design, options, Seed{49, 1});
    CHECK(table.mode == "bootstrap");
    CHECK(table.n == design.n());
    const auto a = table.alpha_index(0.2);
    CHECK(table.mean(1, a) > table.mean(0, a));
}
