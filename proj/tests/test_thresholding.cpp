#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "gosa/benchmarks.hpp"
#include "gosa/csv.hpp"
#include "gosa/errors.hpp"
#include "gosa/sampling.hpp"
#include "gosa/thresholding.hpp"

using namespace gosa;

namespace {

// Unconstrained design with given objective values.
EvaluatedDesign make_design(std::initializer_list<double> f_values) {
    EvaluatedDesign d;
    const auto n = static_cast<Eigen::Index>(f_values.size());
    d.X = Eigen::MatrixXd::Zero(n, 1);
    d.f.resize(n);
    Eigen::Index i = 0;
    for (double v : f_values) {
        d.X(i, 0) = static_cast<double>(i);
        d.f[i] = v;
        ++i;
    }
    d.G.resize(n, 0);
    return d;
}

// Single-constraint design with given worst violations.
EvaluatedDesign make_constrained(std::initializer_list<double> violations) {
    EvaluatedDesign d = make_design({});
    const auto n = static_cast<Eigen::Index>(violations.size());
    d.X = Eigen::MatrixXd::Zero(n, 1);
    d.f = Eigen::VectorXd::Zero(n);
    d.G.resize(n, 1);
    Eigen::Index i = 0;
    for (double v : violations) {
        d.X(i, 0) = static_cast<double>(i);
        d.f[i] = static_cast<double>(i);
        d.G(i, 0) = v;
        ++i;
    }
    return d;
}

} // namespace

TEST_CASE("auto_relax") {
    SUBCASE("zero when already satisfied") {
        const auto d = make_constrained({-1.0, -0.2, -3.0});
        const auto T = auto_relax(d, 3);
        CHECK(T.size() == 1);
        CHECK(T[0] == 0.0);
    }
    SUBCASE("order statistic of worst violations") {
        const auto d = make_constrained({-1.0, 0.5, 2.0});
        CHECK(auto_relax(d, 2)[0] == 0.5);
    }
    SUBCASE("admitting every point") {
        const auto d = make_constrained({-1.0, 0.5, 2.0});
        CHECK(auto_relax(d, 3)[0] == 2.0);
    }
    SUBCASE("minimality: any smaller t loses the count") {
        const auto d = make_constrained({-1.0, 0.5, 2.0, 0.25, 1.0});
        const double t = auto_relax(d, 4)[0];
        CHECK(t == 1.0);
        int at_t = 0;
        int below = 0;
        for (Eigen::Index i = 0; i < d.n(); ++i) {
            if (d.G(i, 0) <= t) ++at_t;
            if (d.G(i, 0) <= t - 1e-9) ++below;
        }
        CHECK(at_t >= 4);
        CHECK(below < 4);
    }
    SUBCASE("min_feasible beyond design size") {
        const auto d = make_constrained({0.0});
        CHECK_THROWS_AS(auto_relax(d, 2), ArgumentError);
    }
}

TEST_CASE("sublevel_indicator median cut") {
    const auto d = make_design({1.0, 2.0, 3.0, 4.0});
    ThresholdSpec spec;
    spec.alpha = 0.5;
    const auto sub = sublevel_indicator(d, spec);
    CHECK(sub.q_value == 2.0);
    CHECK(sub.z == std::vector<bool>{true, true, false, false});
    CHECK(sub.n_feasible == 4);
    CHECK(sub.n_in_set == 2);
}

TEST_CASE("alpha = 1 reduces membership to feasibility") {
    const auto problem = benchmarks::gtcd();
    const auto design =
        evaluate(problem, uniform_sample(problem.domain, 400, Seed{21, 0}));
    ThresholdSpec spec;
    spec.alpha = 1.0;
    spec.T = Eigen::VectorXd::Zero(1);
    const auto sub = sublevel_indicator(design, spec);
    const auto mask = feasible_mask(design);
    CHECK(sub.z == mask);
}

TEST_CASE("sublevel set size follows the quantile count") {
    const auto problem = benchmarks::dixon_price();
    const auto design =
        evaluate(problem, uniform_sample(problem.domain, 10000, Seed{22, 0}));
    ThresholdSpec spec;
    spec.alpha = 0.2;
    const auto sub = sublevel_indicator(design, spec);
    CHECK(sub.n_in_set == 2000);
}

TEST_CASE("no feasible point raises a degenerate error") {
    const auto d = make_constrained({0.5, 1.0});
    ThresholdSpec spec;
    spec.alpha = 0.5;
    spec.T = Eigen::VectorXd::Zero(1);
    CHECK_THROWS_AS(sublevel_indicator(d, spec), DegenerateError);
}

TEST_CASE("zero_threshold") {
    const auto d = make_design({1.0, 2.0, 3.0, 4.0});
    ThresholdSpec spec;
    spec.alpha = 0.5;

    SUBCASE("outside points take the fill value") {
        const auto z = zero_threshold(d, spec);
        CHECK(z[0] == 1.0);
        CHECK(z[1] == 2.0);
        CHECK(z[2] == 0.0);
        CHECK(z[3] == 0.0);
    }
    SUBCASE("alpha = 1 unconstrained is the identity") {
        spec.alpha = 1.0;
        CHECK(zero_threshold(d, spec) == d.f);
    }
    SUBCASE("fill values differ exactly on the complement") {
        ThresholdSpec filled = spec;
        filled.zero_fill = 100.0;
        const auto z0 = zero_threshold(d, spec);
        const auto zc = zero_threshold(d, filled);
        for (Eigen::Index i = 0; i < d.n(); ++i) {
            if (z0[i] == d.f[i])
                CHECK(zc[i] == d.f[i]);
            else
                CHECK(zc[i] == 100.0);
        }
    }
}

TEST_CASE("conditional_subset") {
    SUBCASE("alpha = 1 unconstrained returns everything") {
        const auto d = make_design({5.0, 1.0, 3.0});
        ThresholdSpec spec;
        spec.alpha = 1.0;
        const auto [Xs, fs] = conditional_subset(d, spec);
        CHECK(Xs == d.X);
        CHECK(fs == d.f);
    }
    SUBCASE("linear function quantile region, order preserved") {
        const auto problem = benchmarks::linear2d();
        const auto design =
            evaluate(problem, uniform_sample(problem.domain, 4000, Seed{23, 0}));
        ThresholdSpec spec;
        spec.alpha = 0.25;
        const auto sub = sublevel_indicator(design, spec);
        const auto [Xs, fs] = conditional_subset(design, spec);
        CHECK(Xs.rows() == sub.n_in_set);
        for (Eigen::Index i = 0; i < fs.size(); ++i)
            CHECK(fs[i] <= sub.q_value);
        // Order preservation: f values appear in original scan order.
        Eigen::Index k = 0;
        for (Eigen::Index i = 0; i < design.n(); ++i) {
            if (sub.z[static_cast<std::size_t>(i)]) {
                CHECK(fs[k] == design.f[i]);
                ++k;
            }
        }
    }
}

TEST_CASE("nestedness in alpha") {
    const auto problem = benchmarks::dixon_price();
    const auto design =
        evaluate(problem, uniform_sample(problem.domain, 2000, Seed{24, 0}));
    ThresholdSpec narrow;
    narrow.alpha = 0.2;
    ThresholdSpec wide;
    wide.alpha = 0.7;
    const auto a = sublevel_indicator(design, narrow);
    const auto b = sublevel_indicator(design, wide);
    for (std::size_t i = 0; i < a.z.size(); ++i) {
        if (a.z[i]) CHECK(b.z[i]);
    }
}

TEST_CASE("membership exports as a z column on the design CSV") {
    const auto problem = benchmarks::dixon_price();
    const auto design =
        evaluate(problem, uniform_sample(problem.domain, 10, Seed{26, 0}));
    ThresholdSpec spec;
    spec.alpha = 0.5;
    const auto sub = sublevel_indicator(design, spec);

    std::stringstream out;
    write_design_csv(out, design, &sub);
    std::string header;
    std::getline(out, header);
    CHECK(header == "x1,x2,f,z");
    std::string line;
    Eigen::Index row = 0;
    while (std::getline(out, line)) {
        const char z = line.back();
        CHECK(z == (sub.z[static_cast<std::size_t>(row)] ? '1' : '0'));
        ++row;
    }
    CHECK(row == design.n());
}

TEST_CASE("monotone invariance of the indicator") {
    const auto problem = benchmarks::level_fn();
    auto design = evaluate(problem, uniform_sample(problem.domain, 3000, Seed{25, 0}));
    ThresholdSpec spec;
    spec.alpha = 0.3;
    const auto before = sublevel_indicator(design, spec);

    EvaluatedDesign mapped = design;
    for (Eigen::Index i = 0; i < mapped.n(); ++i)
        mapped.f[i] = std::exp(mapped.f[i]);
    const auto after = sublevel_indicator(mapped, spec);

    CHECK(after.z == before.z);
    CHECK(after.q_value == std::exp(before.q_value));
}
