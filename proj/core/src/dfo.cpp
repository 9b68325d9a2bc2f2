#include "gosa/dfo.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "gosa/errors.hpp"
#include "gosa/linprog.hpp"

namespace gosa {

const char* to_string(RunStatus status) {
    switch (status) {
        case RunStatus::Converged: return "converged";
        case RunStatus::BudgetExhausted: return "budget-exhausted";
        case RunStatus::Degenerate: return "degenerate";
    }
    return "unknown";
}

namespace {

struct BudgetExhaustedSignal {};

struct Point {
    Eigen::VectorXd u; // unit-box coordinates
    double f = 0.0;
    Eigen::VectorXd g;
    double viol = 0.0; // max(0, max_l g_l)
};

// Feasibility-first comparison used for incumbent tracking.
bool better(const Point& a, const Point& b) {
    const bool fa = a.viol <= 0.0;
    const bool fb = b.viol <= 0.0;
    if (fa != fb) return fa;
    if (fa) return a.f < b.f;
    if (a.viol != b.viol) return a.viol < b.viol;
    return a.f < b.f;
}

// Evaluation bookkeeping in normalized coordinates. The optimizer works on
// the unit box; x = lower + width .* u. Tracks the feasibility-first
// incumbent and when it last improved by a meaningful margin, which drives
// the stagnation stop.
class Run {
public:
    Run(const ProblemSpec& problem, int budget)
        : problem_(problem),
          lower_(problem.domain.lower),
          width_(problem.domain.upper - problem.domain.lower),
          budget_(budget) {}

    Point eval(const Eigen::VectorXd& u) {
        if (n_calls_ >= budget_) throw BudgetExhaustedSignal{};
        ++n_calls_;
        const Eigen::VectorXd x = lower_ + width_.cwiseProduct(u);
        Point p;
        p.u = u;
        p.f = problem_.objective(x);
        if (!std::isfinite(p.f))
            throw NumericError("dfo_minimize: objective non-finite");
        const auto m = problem_.n_constraints();
        p.g.resize(m);
        p.viol = 0.0;
        for (Eigen::Index l = 0; l < m; ++l) {
            p.g[l] = problem_.constraints[static_cast<std::size_t>(l)](x);
            if (!std::isfinite(p.g[l]))
                throw NumericError("dfo_minimize: constraint non-finite");
            p.viol = std::max(p.viol, p.g[l]);
        }
        p.viol = std::max(p.viol, 0.0);
        if (!has_best_ || better(p, best_)) {
            constexpr double kFtolRel = 1e-5;
            bool meaningful = true;
            if (has_best_) {
                if (best_.viol > 0.0 && p.viol > 0.0) {
                    meaningful = best_.viol - p.viol > 1e-9 * (1.0 + best_.viol);
                } else if (best_.viol <= 0.0 && p.viol <= 0.0) {
                    meaningful = best_.f - p.f > kFtolRel * std::abs(best_.f);
                }
            }
            if (meaningful) last_progress_call_ = n_calls_;
            best_ = p;
            has_best_ = true;
        }
        return p;
    }

    [[nodiscard]] Eigen::VectorXd denormalize(const Eigen::VectorXd& u) const {
        return lower_ + width_.cwiseProduct(u);
    }
    [[nodiscard]] int n_calls() const { return n_calls_; }
    [[nodiscard]] int calls_since_progress() const {
        return n_calls_ - last_progress_call_;
    }
    [[nodiscard]] const Point& best() const { return best_; }

private:
    const ProblemSpec& problem_;
    Eigen::VectorXd lower_;
    Eigen::VectorXd width_;
    int budget_;
    int n_calls_ = 0;
    int last_progress_call_ = 0;
    Point best_;
    bool has_best_ = false;
};

double merit(const Point& p, double mu) { return p.f + mu * p.viol; }

} // namespace

StudyRecord dfo_minimize(const ProblemSpec& problem, const Eigen::VectorXd& x0,
                         const DfoOptions& options) {
    const Eigen::Index d = problem.dim();
    const auto m = problem.n_constraints();
    if (x0.size() != d) throw ShapeError("dfo_minimize: x0 dimension mismatch");
    if (!problem.domain.contains(x0))
        throw OutOfDomainError("dfo_minimize: start point outside the box");
    if (options.budget < d + 2)
        throw ArgumentError("dfo_minimize: budget must be >= d+2");

    // Radii are fractions of each coordinate's width (the optimizer runs on
    // the unit box), so wide and narrow coordinates advance at the same
    // relative pace.
    double rho = options.rho_begin > 0.0 ? options.rho_begin : 0.1;
    rho = std::min(rho, 0.5);
    const double rho_max = rho;
    int win_streak = 0;
    const double rho_end = options.rho_end > 0.0 ? options.rho_end : 1e-6;
    if (!(rho_end < rho))
        throw ArgumentError("dfo_minimize: rho_end must be < rho_begin");

    StudyRecord record;
    record.start = x0;
    record.status = RunStatus::Converged;

    Run run(problem, options.budget);
    std::vector<Point> simplex;

    // center taken by value: callers pass members of the simplex this
    // function is about to clear.
    auto build_simplex = [&](const Point center, double radius) { // NOLINT
        simplex.clear();
        simplex.push_back(center);
        for (Eigen::Index i = 0; i < d; ++i) {
            Eigen::VectorXd v = center.u;
            v[i] = v[i] + radius <= 1.0 ? v[i] + radius : v[i] - radius;
            simplex.push_back(run.eval(v));
        }
    };

    double mu = 0.0;
    constexpr double kMuMax = 1e14;

    try {
        Eigen::VectorXd u0 =
            (x0 - problem.domain.lower).cwiseQuotient(problem.domain.upper -
                                                      problem.domain.lower);
        u0 = u0.cwiseMax(0.0).cwiseMin(1.0);
        build_simplex(run.eval(u0), rho);

        // Stop once the incumbent stops moving: refining a solved problem
        // down to rho_end would otherwise eat the remaining budget.
        const int stall_limit = 15 * static_cast<int>(d + 2);

        bool just_rebuilt = true;
        while (rho >= rho_end && run.calls_since_progress() <= stall_limit) {
            // Best vertex by current merit becomes the model center.
            std::size_t bi = 0;
            for (std::size_t i = 1; i < simplex.size(); ++i)
                if (merit(simplex[i], mu) < merit(simplex[bi], mu)) bi = i;
            std::swap(simplex[0], simplex[bi]);
            const Point& c = simplex[0];

            // Linear models from the simplex edges: D a = delta(phi).
            Eigen::MatrixXd D(d, d);
            Eigen::VectorXd df(d);
            Eigen::MatrixXd dg(d, m);
            for (Eigen::Index i = 0; i < d; ++i) {
                D.row(i) = (simplex[static_cast<std::size_t>(i + 1)].u - c.u).transpose();
                df[i] = simplex[static_cast<std::size_t>(i + 1)].f - c.f;
                for (Eigen::Index l = 0; l < m; ++l)
                    dg(i, l) = simplex[static_cast<std::size_t>(i + 1)].g[l] - c.g[l];
            }
            const Eigen::FullPivLU<Eigen::MatrixXd> lu(D);
            if (!lu.isInvertible()) {
                if (just_rebuilt) {
                    // A fresh axis-aligned simplex cannot be singular unless
                    // the geometry is beyond repair.
                    record.status = RunStatus::Degenerate;
                    break;
                }
                just_rebuilt = true;
                build_simplex(c, rho);
                continue;
            }
            just_rebuilt = false;
            const Eigen::VectorXd grad_f = lu.solve(df);
            const Eigen::MatrixXd grad_g =
                m > 0 ? Eigen::MatrixXd(lu.solve(dg)) // column l = gradient of g_l
                      : Eigen::MatrixXd(d, 0);

            // Trust-region bounds intersected with the unit box.
            Eigen::VectorXd slo(d);
            Eigen::VectorXd shi(d);
            for (Eigen::Index i = 0; i < d; ++i) {
                slo[i] = std::max(-rho, 0.0 - c.u[i]);
                shi[i] = std::min(rho, 1.0 - c.u[i]);
            }

            // Stage 1: minimal model infeasibility t over the region.
            double vtarget = 0.0;
            if (m > 0 && c.viol > 0.0) {
                LpProblem lp1;
                lp1.c = Eigen::VectorXd::Zero(d + 1);
                lp1.c[d] = 1.0;
                lp1.A.resize(m, d + 1);
                lp1.b.resize(m);
                for (Eigen::Index l = 0; l < m; ++l) {
                    lp1.A.row(l).head(d) = grad_g.col(l).transpose();
                    lp1.A(l, d) = -1.0;
                    lp1.b[l] = -c.g[l];
                }
                double tlo = 0.0;
                for (Eigen::Index l = 0; l < m; ++l) {
                    const double reach = grad_g.col(l).cwiseAbs().dot(
                        slo.cwiseAbs().cwiseMax(shi.cwiseAbs()));
                    tlo = std::min(tlo, c.g[l] - reach);
                }
                lp1.lo.resize(d + 1);
                lp1.hi.resize(d + 1);
                lp1.lo.head(d) = slo;
                lp1.hi.head(d) = shi;
                lp1.lo[d] = tlo - 1.0;
                lp1.hi[d] = c.viol + 1.0;
                const LpResult r1 = lp_solve(lp1);
                if (r1.feasible) vtarget = std::max(r1.x[d], 0.0);
            }

            // Stage 2: minimize the model objective at that infeasibility.
            LpProblem lp2;
            lp2.c = grad_f;
            lp2.A.resize(m, d);
            lp2.b.resize(m);
            for (Eigen::Index l = 0; l < m; ++l) {
                lp2.A.row(l) = grad_g.col(l).transpose();
                const double scale = 1.0 + grad_g.col(l).cwiseAbs().sum() * rho;
                lp2.b[l] = vtarget - c.g[l] + 1e-12 * scale;
            }
            lp2.lo = slo;
            lp2.hi = shi;
            const LpResult r2 = lp_solve(lp2);

            // Simplex spread guides the geometry bookkeeping below.
            double spread = 0.0;
            std::size_t far = 1;
            for (std::size_t i = 1; i < simplex.size(); ++i) {
                const double dist = (simplex[i].u - c.u).lpNorm<Eigen::Infinity>();
                if (dist > spread) {
                    spread = dist;
                    far = i;
                }
            }
            auto fix_geometry = [&] {
                Eigen::Index j = 0;
                (simplex[far].u - c.u).cwiseAbs().maxCoeff(&j);
                Eigen::VectorXd v = c.u;
                v[j] = v[j] + rho <= 1.0 ? v[j] + rho : v[j] - rho;
                simplex[far] = run.eval(v);
            };

            bool level_done = false;
            if (!r2.feasible || r2.x.lpNorm<Eigen::Infinity>() < 0.1 * rho) {
                // The model sees no useful move. Trust that verdict only when
                // the model is built from a simplex matching this radius.
                if (spread > 2.0 * rho) {
                    fix_geometry();
                } else {
                    level_done = true;
                }
            } else {
                const Eigen::VectorXd s = r2.x;
                const double f_hat = c.f + grad_f.dot(s);
                double viol_hat = 0.0;
                for (Eigen::Index l = 0; l < m; ++l)
                    viol_hat = std::max(viol_hat, c.g[l] + grad_g.col(l).dot(s));
                viol_hat = std::max(viol_hat, 0.0);
                double pred = (c.f + mu * c.viol) - (f_hat + mu * viol_hat);
                if (pred <= 0.0 && c.viol > viol_hat && mu < kMuMax) {
                    mu = std::min(kMuMax,
                                  1.5 * (f_hat - c.f) / (c.viol - viol_hat) + mu + 1.0);
                    pred = (c.f + mu * c.viol) - (f_hat + mu * viol_hat);
                }

                if (pred <= 0.0) {
                    level_done = true;
                } else {
                    Eigen::VectorXd un = c.u + s;
                    un = un.cwiseMax(0.0).cwiseMin(1.0);
                    const Point trial = run.eval(un);
                    const double actual = merit(c, mu) - merit(trial, mu);
                    if (actual > 0.1 * pred) {
                        // A sustained run of very successful full-radius
                        // steps earns the radius back, so a cliff rejection
                        // early on does not doom the rest of the run to
                        // micro-steps. Isolated successes inside a boundary
                        // zigzag do not qualify.
                        if (actual > 0.7 * pred &&
                            s.lpNorm<Eigen::Infinity>() > 0.9 * rho) {
                            if (++win_streak >= 2) {
                                rho = std::min(rho * 2.0, rho_max);
                                win_streak = 0;
                            }
                        } else {
                            win_streak = 0;
                        }
                        // Replace the vertex whose removal keeps the simplex
                        // volume largest (repeated worst-vertex replacement
                        // collapses the simplex along the descent direction).
                        std::size_t wi = 1;
                        double best_vol = -1.0;
                        for (std::size_t r = 1; r < simplex.size(); ++r) {
                            Eigen::MatrixXd E(d, d);
                            Eigen::Index row = 0;
                            for (std::size_t i = 0; i < simplex.size(); ++i) {
                                if (i == r) continue;
                                E.row(row++) = (simplex[i].u - trial.u).transpose();
                            }
                            const double vol = std::abs(E.determinant());
                            if (vol > best_vol) {
                                best_vol = vol;
                                wi = r;
                            }
                        }
                        simplex[wi] = trial;
                    } else if (spread > 2.0 * rho) {
                        fix_geometry();
                    } else {
                        level_done = true;
                    }
                }
            }

            if (level_done) {
                rho *= 0.5;
                win_streak = 0;
            }
        }
    } catch (const BudgetExhaustedSignal&) {
        record.status = RunStatus::BudgetExhausted;
    }

    const Point& best = run.best();
    record.x_final = run.denormalize(best.u);
    record.f_final = best.f;
    record.feasible = best.viol <= 0.0;
    record.n_calls = run.n_calls();
    return record;
}

} // namespace gosa
