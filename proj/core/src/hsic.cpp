#include "gosa/hsic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gosa/errors.hpp"
#include "gosa/parallel.hpp"
#include "gosa/sampling.hpp"
#include "gosa/thresholding.hpp"

namespace gosa {

double hsic_biased(const Eigen::MatrixXd& K, const Eigen::MatrixXd& L) {
    if (K.rows() != K.cols() || L.rows() != L.cols())
        throw ShapeError("hsic_biased: Gram matrices must be square");
    if (K.rows() != L.rows())
        throw ShapeError("hsic_biased: Gram sizes differ");
    const auto n = static_cast<double>(K.rows());
    // tr(K H L H) equals the elementwise product of K with the doubly
    // centered L (trace cyclicity plus H idempotence).
    const Eigen::MatrixXd Lc = center(L);
    return K.cwiseProduct(Lc).sum() / (n * n);
}

double mmd2_biased(const Eigen::MatrixXd& p_samples,
                   const Eigen::MatrixXd& q_samples, const KernelSpec& kernel) {
    if (p_samples.rows() < 1 || q_samples.rows() < 1)
        throw ArgumentError("mmd2_biased: empty sample set");
    const double kpp = gram(kernel, p_samples, p_samples).mean();
    const double kqq = gram(kernel, q_samples, q_samples).mean();
    const double kpq = gram(kernel, p_samples, q_samples).mean();
    return kpp + kqq - 2.0 * kpq;
}

namespace {

// For a binary output with the linear kernel, L = z z^T and
// tr(K H L H)/n^2 reduces to zc^T K zc / n^2 with zc = z - mean(z).
// Evaluating the quadratic form directly skips the L allocation.
double hsic_binary_quadform(const Eigen::MatrixXd& K, const Eigen::VectorXd& zc) {
    const auto n = static_cast<double>(K.rows());
    return zc.dot(K * zc) / (n * n);
}

} // namespace

HsicItResult hsic_it(const Eigen::MatrixXd& X, const std::vector<bool>& z,
                     const std::vector<KernelSpec>& kernel_x) {
    const Eigen::Index n = X.rows();
    const Eigen::Index d = X.cols();
    if (static_cast<Eigen::Index>(z.size()) != n)
        throw ShapeError("hsic_it: z length differs from row count");
    if (static_cast<Eigen::Index>(kernel_x.size()) != d)
        throw ShapeError("hsic_it: one kernel per input required");

    HsicItResult out;
    out.raw = Eigen::VectorXd::Zero(d);

    Eigen::Index ones = 0;
    Eigen::VectorXd zc(n);
    for (Eigen::Index i = 0; i < n; ++i)
        ones += z[static_cast<std::size_t>(i)] ? 1 : 0;
    if (ones == 0 || ones == n) {
        out.degenerate_z = true;
        return out;
    }
    const double zbar = static_cast<double>(ones) / static_cast<double>(n);
    for (Eigen::Index i = 0; i < n; ++i)
        zc[i] = (z[static_cast<std::size_t>(i)] ? 1.0 : 0.0) - zbar;

    for (Eigen::Index j = 0; j < d; ++j) {
        const Eigen::MatrixXd K = gram(kernel_x[static_cast<std::size_t>(j)],
                                       Eigen::MatrixXd(X.col(j)),
                                       Eigen::MatrixXd(X.col(j)));
        out.raw[j] = hsic_binary_quadform(K, zc);
    }
    return out;
}

HsicItResult hsic_it(const Eigen::MatrixXd& X, const std::vector<bool>& z) {
    std::vector<KernelSpec> kernels;
    kernels.reserve(static_cast<std::size_t>(X.cols()));
    for (Eigen::Index j = 0; j < X.cols(); ++j)
        kernels.push_back(KernelSpec::rbf(median_bandwidth(Eigen::VectorXd(X.col(j)))));
    return hsic_it(X, z, kernels);
}

Eigen::VectorXd normalize(const Eigen::VectorXd& raw, Normalization mode,
                          const std::optional<CrossNormAux>& aux) {
    for (Eigen::Index i = 0; i < raw.size(); ++i)
        if (raw[i] < 0.0)
            throw ArgumentError("normalize: raw indices must be >= 0");

    if (mode == Normalization::Sum) {
        const double total = raw.sum();
        if (!(total > 0.0))
            throw DegenerateError("normalize: all indices zero in sum mode");
        return raw / total;
    }

    if (!aux)
        throw ArgumentError("normalize: cross mode needs HSIC(X_i,X_i) and HSIC(Z,Z)");
    if (aux->hsic_xx.size() != raw.size())
        throw ShapeError("normalize: aux size mismatch");
    Eigen::VectorXd out(raw.size());
    for (Eigen::Index i = 0; i < raw.size(); ++i) {
        const double denom = std::sqrt(aux->hsic_xx[i] * aux->hsic_zz);
        if (!(denom > 0.0))
            throw DegenerateError("normalize: zero cross-normalization term");
        out[i] = raw[i] / denom;
    }
    return out;
}

Eigen::Index IndexTable::alpha_index(double alpha) const {
    for (std::size_t a = 0; a < alphas.size(); ++a)
        if (std::abs(alphas[a] - alpha) < 1e-12)
            return static_cast<Eigen::Index>(a);
    throw ArgumentError("IndexTable: alpha level not present");
}

namespace {

// Subsample row indices for the Gram computation. Proportional allocation
// follows each z-class share but keeps at least min(#ones, kRareFloor)
// members of the rare class so near-empty sublevel sets remain visible.
std::vector<Eigen::Index> gram_subsample_rows(const std::vector<bool>& z,
                                              Eigen::Index n, Eigen::Index m,
                                              GramSubsample scheme, Rng& rng) {
    std::vector<Eigen::Index> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), Eigen::Index{0});
    if (m >= n) return all;

    auto take = [&rng](std::vector<Eigen::Index>& pool, Eigen::Index count,
                       std::vector<Eigen::Index>& out) {
        for (Eigen::Index i = 0; i < count; ++i) {
            const auto j = i + static_cast<Eigen::Index>(rng.below(
                                   static_cast<std::uint64_t>(pool.size() - i)));
            std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
            out.push_back(pool[static_cast<std::size_t>(i)]);
        }
    };

    if (scheme == GramSubsample::Uniform) {
        std::vector<Eigen::Index> out;
        out.reserve(static_cast<std::size_t>(m));
        take(all, m, out);
        std::sort(out.begin(), out.end());
        return out;
    }

    constexpr Eigen::Index kRareFloor = 50;
    std::vector<Eigen::Index> ones;
    std::vector<Eigen::Index> zeros;
    for (Eigen::Index i = 0; i < n; ++i)
        (z[static_cast<std::size_t>(i)] ? ones : zeros).push_back(i);

    const auto n1 = static_cast<Eigen::Index>(ones.size());
    const auto proportional = static_cast<Eigen::Index>(std::llround(
        static_cast<double>(m) * static_cast<double>(n1) / static_cast<double>(n)));
    Eigen::Index take1 = std::max(proportional, std::min(n1, kRareFloor));
    take1 = std::min({take1, n1, m});
    const Eigen::Index take0 =
        std::min<Eigen::Index>(m - take1, static_cast<Eigen::Index>(zeros.size()));

    std::vector<Eigen::Index> out;
    out.reserve(static_cast<std::size_t>(take1 + take0));
    take(ones, take1, out);
    take(zeros, take0, out);
    std::sort(out.begin(), out.end());
    return out;
}

struct RepOutcome {
    Eigen::MatrixXd values; // d x n_alpha, normalized (zero if degenerate)
    std::vector<bool> degenerate;
    Eigen::VectorXd relaxation;
    Eigen::VectorXd q_values;
    std::vector<Eigen::Index> n_in_set;
};

RepOutcome run_repetition(const EvaluatedDesign& design,
                          const ReplicateOptions& options, Rng& rng) {
    const Eigen::Index d = design.dim();
    const auto n_alpha = static_cast<Eigen::Index>(options.alphas.size());

    RepOutcome rep;
    rep.values = Eigen::MatrixXd::Zero(d, n_alpha);
    rep.degenerate.assign(static_cast<std::size_t>(n_alpha), false);
    rep.q_values.resize(n_alpha);
    rep.n_in_set.assign(static_cast<std::size_t>(n_alpha), 0);

    rep.relaxation = auto_relax(design, std::min(options.min_feasible, design.n()));

    for (Eigen::Index a = 0; a < n_alpha; ++a) {
        ThresholdSpec spec;
        spec.alpha = options.alphas[static_cast<std::size_t>(a)];
        spec.T = rep.relaxation;
        const SublevelResult sub = sublevel_indicator(design, spec);
        rep.q_values[a] = sub.q_value;
        rep.n_in_set[static_cast<std::size_t>(a)] = sub.n_in_set;

        const auto rows = gram_subsample_rows(sub.z, design.n(),
                                              options.gram_subsample,
                                              options.scheme, rng);
        const auto ns = static_cast<Eigen::Index>(rows.size());
        Eigen::MatrixXd Xs(ns, d);
        std::vector<bool> zs(static_cast<std::size_t>(ns));
        for (Eigen::Index i = 0; i < ns; ++i) {
            Xs.row(i) = design.X.row(rows[static_cast<std::size_t>(i)]);
            zs[static_cast<std::size_t>(i)] =
                sub.z[static_cast<std::size_t>(rows[static_cast<std::size_t>(i)])];
        }

        const HsicItResult it = hsic_it(Xs, zs);
        if (it.degenerate_z) {
            rep.degenerate[static_cast<std::size_t>(a)] = true;
            continue; // zero row: the sweep keeps going
        }
        if (options.norm == Normalization::Sum) {
            rep.values.col(a) = normalize(it.raw, Normalization::Sum);
        } else {
            CrossNormAux aux;
            aux.hsic_xx.resize(d);
            for (Eigen::Index j = 0; j < d; ++j) {
                const KernelSpec kj =
                    KernelSpec::rbf(median_bandwidth(Eigen::VectorXd(Xs.col(j))));
                const Eigen::MatrixXd Kj = gram(kj, Eigen::MatrixXd(Xs.col(j)),
                                                Eigen::MatrixXd(Xs.col(j)));
                aux.hsic_xx[j] = hsic_biased(Kj, Kj);
            }
            Eigen::VectorXd zvec(ns);
            for (Eigen::Index i = 0; i < ns; ++i)
                zvec[i] = zs[static_cast<std::size_t>(i)] ? 1.0 : 0.0;
            const Eigen::MatrixXd L = zvec * zvec.transpose();
            aux.hsic_zz = hsic_biased(L, L);
            rep.values.col(a) = normalize(it.raw, Normalization::Cross, aux);
        }
    }
    return rep;
}

IndexTable replicate_impl(
    const std::function<EvaluatedDesign(Seed)>& make_design,
    Eigen::Index dim, const ReplicateOptions& options, Seed seed,
    std::string mode) {
    if (options.reps < 2) throw ArgumentError("replicate_indices: reps must be >= 2");
    if (options.gram_subsample < 2)
        throw ArgumentError("replicate_indices: gram subsample too small");
    if (options.alphas.empty())
        throw ArgumentError("replicate_indices: alpha grid is empty");

    const auto n_alpha = static_cast<Eigen::Index>(options.alphas.size());
    std::vector<RepOutcome> reps(static_cast<std::size_t>(options.reps));

    parallel_for(static_cast<std::size_t>(options.reps), options.workers,
                 [&](std::size_t r) {
                     const Seed rep_seed = seed.derive(static_cast<std::uint32_t>(2 * r));
                     const EvaluatedDesign design = make_design(rep_seed);
                     Rng sub_rng(seed.derive(static_cast<std::uint32_t>(2 * r + 1)));
                     reps[r] = run_repetition(design, options, sub_rng);
                 });

    IndexTable table;
    table.alphas = options.alphas;
    table.reps = options.reps;
    table.n = options.n;
    table.gram_subsample = options.gram_subsample;
    table.norm = options.norm;
    table.mode = std::move(mode);
    table.mean = Eigen::MatrixXd::Zero(dim, n_alpha);
    table.stdev = Eigen::MatrixXd::Zero(dim, n_alpha);

    for (auto& rep : reps) {
        table.values.push_back(rep.values);
        table.degenerate_z.push_back(rep.degenerate);
        table.relaxations.push_back(rep.relaxation);
        table.q_values.push_back(rep.q_values);
        table.n_in_set.push_back(rep.n_in_set);
        table.mean += rep.values;
    }
    table.mean /= static_cast<double>(options.reps);
    for (const auto& rep : reps) {
        const Eigen::MatrixXd diff = rep.values - table.mean;
        table.stdev += diff.cwiseProduct(diff);
    }
    table.stdev = (table.stdev / static_cast<double>(options.reps)).cwiseSqrt();
    return table;
}

} // namespace

IndexTable replicate_indices(const ProblemSpec& problem,
                             const ReplicateOptions& options, Seed seed) {
    if (options.n < 2) throw ArgumentError("replicate_indices: N must be >= 2");
    auto make_design = [&problem, &options](Seed s) {
        const Eigen::MatrixXd X = uniform_sample(problem.domain, options.n, s);
        return evaluate(problem, X);
    };
    return replicate_impl(make_design, problem.dim(), options, seed, "fresh-doe");
}

IndexTable replicate_indices(const EvaluatedDesign& design,
                             const ReplicateOptions& options, Seed seed) {
    ReplicateOptions opts = options;
    opts.n = design.n();
    auto make_design = [&design](Seed s) {
        Rng rng(s);
        const Eigen::Index n = design.n();
        EvaluatedDesign boot;
        boot.X.resize(n, design.dim());
        boot.f.resize(n);
        boot.G.resize(n, design.n_constraints());
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto j = static_cast<Eigen::Index>(
                rng.below(static_cast<std::uint64_t>(n)));
            boot.X.row(i) = design.X.row(j);
            boot.f[i] = design.f[j];
            boot.G.row(i) = design.G.row(j);
        }
        return boot;
    };
    return replicate_impl(make_design, design.dim(), opts, seed, "bootstrap");
}

} // namespace gosa
