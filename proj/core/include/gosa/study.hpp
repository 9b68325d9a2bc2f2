#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gosa/dfo.hpp"
#include "gosa/problem.hpp"
#include "gosa/rng.hpp"
#include "gosa/screening.hpp"

namespace gosa {

/// One problem version entering the multistart comparison. `original`
/// optimizes all variables; `greedy`/`random` freeze the screened-out
/// variables per their strategy; `fixed` uses caller-supplied frozen
/// values (used, e.g., to force a coordinate to a chosen value).
struct StudyVersion {
    enum class Kind { Original, Greedy, Random, Fixed };
    Kind kind = Kind::Original;
    std::string label = "original";
    std::optional<Screening> screening; // required for Greedy/Random/Fixed

    static StudyVersion original();
    static StudyVersion greedy(Screening s);
    static StudyVersion random(Screening s);
    static StudyVersion fixed(std::string label, Screening s);
};

struct StudyOptions {
    Eigen::Index n_starts = 100; // maximin LHS start points per repetition
    int n_reps = 10;
    DfoOptions dfo;
    int lhs_opt_iters = 1000;
    int workers = 0;
};

/// Multistart comparison: per version and repetition, draws a fresh
/// maximin LHS in that version's (possibly reduced) box and runs the
/// optimizer from every start. The random version redraws its frozen
/// values each repetition; greedy/fixed keep theirs. Records come back in
/// deterministic (version, repetition, start) order with full-space
/// coordinates.
std::vector<StudyRecord> run_study(const ProblemSpec& problem,
                                   const std::vector<StudyVersion>& versions,
                                   const StudyOptions& options, Seed seed);

} // namespace gosa
