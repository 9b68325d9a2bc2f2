#include "gosa/linprog.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "gosa/errors.hpp"

namespace gosa {

namespace {

constexpr double kEps = 1e-10;

// Tableau simplex over rows x cols with the objective in the last row and
// the RHS in the last column. basis[r] is the variable basic in row r.
// Bland's rule: smallest-index entering column, smallest-basic-index tie
// break on the ratio test. Columns that turn out numerically unusable
// (negative reduced cost but no admissible pivot) are skipped rather than
// fatal: the feasible set is compact, so they are rounding artifacts.
class Tableau {
public:
    Tableau(Eigen::Index rows, Eigen::Index cols)
        : m_(rows),
          t_(Eigen::MatrixXd::Zero(rows + 1, cols + 1)),
          basis_(static_cast<std::size_t>(rows), -1) {}

    double& at(Eigen::Index r, Eigen::Index c) { return t_(r, c); }
    double& rhs(Eigen::Index r) { return t_(r, t_.cols() - 1); }
    double& obj(Eigen::Index c) { return t_(m_, c); }
    double obj_rhs() const { return t_(m_, t_.cols() - 1); }
    [[nodiscard]] Eigen::Index basic(Eigen::Index r) const {
        return basis_[static_cast<std::size_t>(r)];
    }
    void set_basic(Eigen::Index r, Eigen::Index var) {
        basis_[static_cast<std::size_t>(r)] = var;
    }

    void pivot(Eigen::Index pr, Eigen::Index pc) {
        t_.row(pr) /= t_(pr, pc);
        for (Eigen::Index r = 0; r < t_.rows(); ++r) {
            if (r == pr) continue;
            const double factor = t_(r, pc);
            if (factor != 0.0) t_.row(r) -= factor * t_.row(pr);
        }
        basis_[static_cast<std::size_t>(pr)] = pc;
    }

    void run(Eigen::Index n_cols) {
        std::vector<bool> skipped(static_cast<std::size_t>(n_cols), false);
        for (;;) {
            Eigen::Index pc = -1;
            for (Eigen::Index c = 0; c < n_cols; ++c) {
                if (!skipped[static_cast<std::size_t>(c)] && t_(m_, c) < -kEps) {
                    pc = c;
                    break;
                }
            }
            if (pc < 0) return;

            Eigen::Index pr = -1;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (Eigen::Index r = 0; r < m_; ++r) {
                if (t_(r, pc) > kEps) {
                    const double ratio = rhs(r) / t_(r, pc);
                    if (ratio < best_ratio - kEps ||
                        (ratio < best_ratio + kEps && pr >= 0 &&
                         basis_[static_cast<std::size_t>(r)] <
                             basis_[static_cast<std::size_t>(pr)])) {
                        best_ratio = ratio;
                        pr = r;
                    }
                }
            }
            if (pr < 0) {
                skipped[static_cast<std::size_t>(pc)] = true;
                continue;
            }
            skipped.assign(skipped.size(), false);
            pivot(pr, pc);
        }
    }

    [[nodiscard]] Eigen::Index rows() const { return m_; }

private:
    Eigen::Index m_;
    Eigen::MatrixXd t_;
    std::vector<Eigen::Index> basis_;
};

} // namespace

LpResult lp_solve(const LpProblem& lp) {
    const Eigen::Index n = lp.c.size();
    const Eigen::Index m_ineq = lp.A.rows();
    if (lp.lo.size() != n || lp.hi.size() != n)
        throw ShapeError("lp_solve: bound sizes differ from variable count");
    if (m_ineq > 0 && lp.A.cols() != n)
        throw ShapeError("lp_solve: A column count differs from variable count");
    if (lp.b.size() != m_ineq) throw ShapeError("lp_solve: b size differs from A rows");
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!std::isfinite(lp.lo[i]) || !std::isfinite(lp.hi[i]) ||
            lp.lo[i] > lp.hi[i] + kEps)
            throw ArgumentError("lp_solve: bounds must be finite with lo <= hi");
    }

    // Work in u-space: x = lo + w .* u with u in [0,1]^n. Equilibrating the
    // variables and then each row keeps pivot magnitudes near one even when
    // the caller mixes gradient scales of 1e5 with trust radii of 1e-5.
    Eigen::VectorXd w = (lp.hi - lp.lo).cwiseMax(1e-300);

    const Eigen::Index m = m_ineq + n;
    Eigen::MatrixXd A(m, n);
    Eigen::VectorXd b(m);
    if (m_ineq > 0) {
        A.topRows(m_ineq) = lp.A * w.asDiagonal();
        b.head(m_ineq) = lp.b - lp.A * lp.lo;
    }
    A.bottomRows(n) = Eigen::MatrixXd::Identity(n, n); // u <= 1
    b.tail(n).setOnes();

    for (Eigen::Index r = 0; r < m_ineq; ++r) {
        const double scale = A.row(r).cwiseAbs().maxCoeff();
        if (scale > kEps) {
            A.row(r) /= scale;
            b[r] /= scale;
        }
    }

    Eigen::VectorXd c = lp.c.cwiseProduct(w);
    const double c_scale = c.cwiseAbs().maxCoeff();
    if (c_scale > 0.0) c /= c_scale;

    // Column layout: [u (n) | slack/surplus (m) | artificials].
    Eigen::Index n_art = 0;
    for (Eigen::Index r = 0; r < m; ++r)
        if (b[r] < 0.0) ++n_art;

    const Eigen::Index cols = n + m + n_art;
    Tableau tab(m, cols);

    Eigen::Index art = n + m;
    for (Eigen::Index r = 0; r < m; ++r) {
        const double sign = b[r] < 0.0 ? -1.0 : 1.0;
        for (Eigen::Index col = 0; col < n; ++col) tab.at(r, col) = sign * A(r, col);
        tab.at(r, n + r) = sign;
        tab.rhs(r) = sign * b[r];
        if (sign < 0.0) {
            tab.at(r, art) = 1.0;
            tab.set_basic(r, art);
            ++art;
        } else {
            tab.set_basic(r, n + r);
        }
    }

    LpResult result;

    if (n_art > 0) {
        // Phase 1: minimize the artificial sum.
        for (Eigen::Index col = n + m; col < cols; ++col) tab.obj(col) = 1.0;
        for (Eigen::Index r = 0; r < m; ++r) {
            if (tab.basic(r) >= n + m) {
                for (Eigen::Index col = 0; col <= cols; ++col)
                    tab.at(m, col) -= tab.at(r, col);
            }
        }
        tab.run(cols);
        const double infeasibility = -tab.obj_rhs();
        if (infeasibility > 1e-7 * (1.0 + b.cwiseAbs().maxCoeff())) {
            return result;
        }
        // Drive any zero-level artificial out of the basis.
        for (Eigen::Index r = 0; r < m; ++r) {
            if (tab.basic(r) >= n + m) {
                Eigen::Index pc = -1;
                for (Eigen::Index col = 0; col < n + m; ++col) {
                    if (std::abs(tab.at(r, col)) > kEps) {
                        pc = col;
                        break;
                    }
                }
                if (pc >= 0) tab.pivot(r, pc);
            }
        }
        for (Eigen::Index col = 0; col <= cols; ++col) tab.at(m, col) = 0.0;
    }

    // Phase 2 objective, priced out against the current basis; artificial
    // columns stay out of the candidate set.
    for (Eigen::Index col = 0; col < n; ++col) tab.obj(col) = c[col];
    for (Eigen::Index r = 0; r < m; ++r) {
        const Eigen::Index bv = tab.basic(r);
        if (bv >= 0 && bv < n && c[bv] != 0.0) {
            for (Eigen::Index col = 0; col <= cols; ++col)
                tab.at(m, col) -= c[bv] * tab.at(r, col);
        }
    }
    tab.run(n + m);

    Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
    for (Eigen::Index r = 0; r < m; ++r) {
        const Eigen::Index bv = tab.basic(r);
        if (bv >= 0 && bv < n) u[bv] = tab.rhs(r);
    }
    result.feasible = true;
    result.x = lp.lo + w.cwiseProduct(u.cwiseMax(0.0).cwiseMin(1.0));
    result.value = lp.c.dot(result.x);
    return result;
}

} // namespace gosa
