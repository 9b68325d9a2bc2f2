#include "gosa/study.hpp"

#include <utility>

#include "gosa/errors.hpp"
#include "gosa/parallel.hpp"
#include "gosa/sampling.hpp"

namespace gosa {

StudyVersion StudyVersion::original() { return StudyVersion{}; }

StudyVersion StudyVersion::greedy(Screening s) {
    return StudyVersion{Kind::Greedy, "greedy", std::move(s)};
}

StudyVersion StudyVersion::random(Screening s) {
    return StudyVersion{Kind::Random, "random", std::move(s)};
}

StudyVersion StudyVersion::fixed(std::string label, Screening s) {
    return StudyVersion{Kind::Fixed, std::move(label), std::move(s)};
}

std::vector<StudyRecord> run_study(const ProblemSpec& problem,
                                   const std::vector<StudyVersion>& versions,
                                   const StudyOptions& options, Seed seed) {
    if (options.n_starts < 1) throw ArgumentError("run_study: n_starts must be >= 1");
    if (options.n_reps < 1) throw ArgumentError("run_study: n_reps must be >= 1");

    const Eigen::Index d = problem.dim();
    std::vector<StudyRecord> records(versions.size() *
                                     static_cast<std::size_t>(options.n_reps) *
                                     static_cast<std::size_t>(options.n_starts));

    for (std::size_t v = 0; v < versions.size(); ++v) {
        const StudyVersion& version = versions[v];
        const bool reduced_kind = version.kind != StudyVersion::Kind::Original;
        if (reduced_kind && !version.screening)
            throw ArgumentError("run_study: version '" + version.label +
                                "' needs a screening");
        if (reduced_kind && version.kind != StudyVersion::Kind::Random &&
            !version.screening->values_set())
            throw ArgumentError("run_study: version '" + version.label +
                                "' needs frozen values");

        const Seed version_seed = seed.derive(static_cast<std::uint32_t>(1000 * (v + 1)));

        for (int rep = 0; rep < options.n_reps; ++rep) {
            const Seed rep_seed = version_seed.derive(static_cast<std::uint32_t>(3 * rep));

            // Resolve this repetition's problem (random redraws its values).
            ProblemSpec target = problem;
            std::optional<Screening> screening;
            if (reduced_kind) {
                screening = *version.screening;
                if (version.kind == StudyVersion::Kind::Random) {
                    Rng rng(rep_seed.derive(1));
                    screening->frozen_values.resize(
                        static_cast<Eigen::Index>(screening->frozen.size()));
                    for (std::size_t k = 0; k < screening->frozen.size(); ++k) {
                        const Eigen::Index j = screening->frozen[k];
                        screening->frozen_values[static_cast<Eigen::Index>(k)] =
                            rng.uniform(problem.domain.lower[j], problem.domain.upper[j]);
                    }
                }
                target = reduce(problem, *screening);
            }

            const Eigen::MatrixXd starts =
                options.n_starts >= 2
                    ? lhs_maximin(target.domain, options.n_starts,
                                  rep_seed.derive(2), options.lhs_opt_iters)
                    : uniform_sample(target.domain, options.n_starts, rep_seed.derive(2));

            const std::size_t base =
                (v * static_cast<std::size_t>(options.n_reps) +
                 static_cast<std::size_t>(rep)) *
                static_cast<std::size_t>(options.n_starts);

            parallel_for(static_cast<std::size_t>(options.n_starts), options.workers,
                         [&](std::size_t k) {
                             const Eigen::VectorXd y0 =
                                 starts.row(static_cast<Eigen::Index>(k)).transpose();
                             StudyRecord rec = dfo_minimize(target, y0, options.dfo);
                             rec.version = version.label;
                             if (screening) {
                                 rec.start = merge_point(*screening, d, rec.start);
                                 rec.x_final = merge_point(*screening, d, rec.x_final);
                             }
                             records[base + k] = std::move(rec);
                         });
        }
    }
    return records;
}

} // namespace gosa
