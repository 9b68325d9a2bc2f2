#include "gosa/benchmarks.hpp"

#include <cmath>

#include "gosa/errors.hpp"

namespace gosa {
namespace benchmarks {

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out[i++] = x;
    return out;
}

} // namespace

ProblemSpec dixon_price() {
    ProblemSpec p;
    p.name = "dixon-price";
    p.domain = BoxDomain(vec({-10.0, -10.0}), vec({10.0, 10.0}));
    p.objective = [](const Eigen::VectorXd& x) {
        const double a = x[0] - 1.0;
        const double b = 2.0 * x[1] * x[1] - x[0];
        return a * a + 2.0 * b * b;
    };
    return p;
}

ProblemSpec linear2d() {
    ProblemSpec p;
    p.name = "linear2d";
    p.domain = BoxDomain(vec({-10.0, -10.0}), vec({10.0, 10.0}));
    p.objective = [](const Eigen::VectorXd& x) { return x[0] + 2.0 * x[1]; };
    return p;
}

ProblemSpec level_fn(double q) {
    ProblemSpec p;
    p.name = "level";
    p.domain = BoxDomain(vec({-5.0, -5.0}), vec({5.0, 5.0}));
    p.objective = [q](const Eigen::VectorXd& x) {
        if (std::abs(x[0]) > q) return std::abs(x[0]);
        return std::abs(x[1] - 2.0) - 6.0;
    };
    return p;
}

ProblemSpec twisted_strip(Eigen::Vector2d c, double A, double eps) {
    ProblemSpec p;
    p.name = "twisted-strip";
    p.domain = BoxDomain(vec({-1.0, -1.0}), vec({1.0, 1.0}));
    p.objective = [c, A, eps](const Eigen::VectorXd& x) {
        const double x1p = x[0] - c[0];
        const double x2p = x[1] - c[1];
        const double cross = eps * x2p * x1p;
        if (std::abs(x[0]) >= A) {
            const double r = std::abs(x1p) - A;
            return 10.0 - r * r - cross;
        }
        return 10.0 - cross;
    };
    return p;
}

ProblemSpec gtcd() {
    ProblemSpec p;
    p.name = "gtcd";
    p.domain = BoxDomain(vec({20.0, 1.0, 20.0, 0.1}), vec({50.0, 10.0, 50.0, 60.0}));
    p.objective = [](const Eigen::VectorXd& x) {
        return 8.61e5 * std::sqrt(x[0]) * x[1] * std::pow(x[2], -2.0 / 3.0) /
                   std::sqrt(x[3]) +
               7.72e8 / x[0] * std::pow(x[1], 0.219) - 765.43e6 / x[0] +
               3.69e4 * x[2];
    };
    p.constraints.push_back([](const Eigen::VectorXd& x) {
        return x[3] / (x[1] * x[1]) + 1.0 / (x[1] * x[1]) - 1.0;
    });
    return p;
}

namespace {

// Welded-beam stress helpers.
double wb4_tau1(const Eigen::VectorXd& x) {
    return 6000.0 / (std::sqrt(2.0) * x[0] * x[1]);
}

double wb4_radius(const Eigen::VectorXd& x) {
    const double s = x[1] * x[1] + (x[0] + x[2]) * (x[0] + x[2]);
    return std::sqrt(0.25 * s);
}

double wb4_tau2(const Eigen::VectorXd& x) {
    const double num = 6000.0 * (14.0 + 0.5 * x[1]) * wb4_radius(x);
    const double den = 2.0 * (std::sqrt(2.0) * x[0] * x[1] *
                              (x[1] * x[1] / 12.0 +
                               0.25 * (x[0] + x[2]) * (x[0] + x[2])));
    return num / den;
}

double wb4_tau(const Eigen::VectorXd& x) {
    const double t1 = wb4_tau1(x);
    const double t2 = wb4_tau2(x);
    return std::sqrt(t1 * t1 + t2 * t2 + x[1] * t1 * t2 / wb4_radius(x));
}

double wb4_sigma(const Eigen::VectorXd& x) {
    return 504000.0 / (x[2] * x[2] * x[3]);
}

double wb4_pc(const Eigen::VectorXd& x) {
    return 102372.4 * (1.0 - 0.0282346 * x[2]) * x[2] * x[3] * x[3] * x[3];
}

double wb4_delta(const Eigen::VectorXd& x) {
    return 2.1952 / (x[2] * x[2] * x[2] * x[3]);
}

} // namespace

ProblemSpec wb4() {
    ProblemSpec p;
    p.name = "wb4";
    p.domain = BoxDomain(vec({0.125, 0.1, 0.1, 0.1}), vec({10.0, 10.0, 10.0, 10.0}));
    p.objective = [](const Eigen::VectorXd& x) {
        return 1.10471 * x[0] * x[0] * x[1] +
               0.04811 * x[2] * x[3] * (14.0 + x[1]);
    };
    p.constraints = {
        [](const Eigen::VectorXd& x) { return wb4_tau(x) - 13600.0; },
        [](const Eigen::VectorXd& x) { return wb4_sigma(x) - 30000.0; },
        [](const Eigen::VectorXd& x) { return x[0] - x[3]; },
        [](const Eigen::VectorXd& x) { return 6000.0 - wb4_pc(x); },
        [](const Eigen::VectorXd& x) { return wb4_delta(x) - 0.25; },
    };
    return p;
}

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = [] {
        std::vector<CatalogEntry> c;
        c.push_back({"dixon-price", 2, 0, 0.0, vec({1.0, 1.0 / std::sqrt(2.0)}),
                     100.0, &dixon_price});
        c.push_back({"linear2d", 2, 0, -30.0, vec({-10.0, -10.0}), 100.0, &linear2d});
        c.push_back({"level", 2, 0, -6.0, vec({0.0, 2.0}), 100.0,
                     [] { return level_fn(); }});
        c.push_back({"twisted-strip", 2, 0, 9.069, vec({-1.0, -1.0}), 100.0,
                     [] { return twisted_strip(); }});
        c.push_back({"gtcd", 4, 1, 2964893.85,
                     vec({49.99, 1.178, 24.59, 0.389}), 52.38, &gtcd});
        c.push_back({"wb4", 4, 5, 1.7250, vec({0.206, 3.473, 9.037, 0.206}),
                     5.6e-2, &wb4});
        return c;
    }();
    return entries;
}

ProblemSpec by_name(const std::string& name) {
    for (const auto& entry : catalog())
        if (entry.name == name) return entry.factory();
    throw ArgumentError("unknown benchmark '" + name +
                        "' (expected dixon-price, linear2d, level, twisted-strip, "
                        "gtcd, or wb4)");
}

} // namespace benchmarks
} // namespace gosa
