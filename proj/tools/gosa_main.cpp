// gosa: goal-oriented sensitivity analysis and screened optimization studies.
//
// Subcommands
//   sample       draw a design (uniform or maximin LHS) and write it as CSV
//   sensitivity  HSIC-IT index table over an alpha grid, with repetitions
//   sobol        pick-freeze or given-data Sobol indices over an alpha grid
//   study        multistart optimization comparison across problem versions
//
// Every run is reproducible from its flags and --seed; metadata.json records
// the derived quantities (T, q values, frozen values) needed to replay.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gosa/benchmarks.hpp"
#include "gosa/csv.hpp"
#include "gosa/errors.hpp"
#include "gosa/hsic.hpp"
#include "gosa/sampling.hpp"
#include "gosa/screening.hpp"
#include "gosa/sobol.hpp"
#include "gosa/study.hpp"
#include "gosa/thresholding.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace gosa;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitNumeric = 4;

struct CommonOptions {
    std::string benchmark;
    std::string design_path;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
    int workers = 0;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool needs_problem = true) {
    cmd->set_config("--config", "", "flat key=value config file (flags win)");
    auto* b = cmd->add_option("--benchmark", opts.benchmark,
                              "benchmark name (dixon-price, linear2d, level, "
                              "twisted-strip, gtcd, wb4)");
    if (needs_problem) {
        auto* d = cmd->add_option("--design", opts.design_path,
                                  "evaluated design CSV instead of a benchmark");
        b->excludes(d);
    }
    cmd->add_option("--seed", opts.seed, "master seed")->capture_default_str();
    cmd->add_option("--out", opts.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--workers", opts.workers,
                    "parallel workers (0 = hardware concurrency)")
        ->capture_default_str();
}

ProblemSpec resolve_problem(const CommonOptions& opts) {
    if (opts.benchmark.empty())
        throw ArgumentError("a --benchmark (or --design where supported) is required");
    return benchmarks::by_name(opts.benchmark);
}

std::ofstream open_output(const CommonOptions& opts, const std::string& name) {
    fs::create_directories(opts.out_dir);
    const fs::path path = fs::path(opts.out_dir) / name;
    std::ofstream out(path);
    if (!out) throw ArgumentError("cannot write " + path.string());
    return out;
}

json seed_json(const CommonOptions& opts) {
    return json{{"master", opts.seed}, {"stream", 0}, {"rng", kRngName}};
}

void write_json(const CommonOptions& opts, const std::string& name, const json& j) {
    auto out = open_output(opts, name);
    out << j.dump(2) << '\n';
}

json histogram_json(const std::vector<double>& values, int bins) {
    json h;
    if (values.empty()) return h;
    double lo = values.front();
    double hi = values.front();
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi <= lo) hi = lo + 1.0;
    std::vector<int> counts(static_cast<std::size_t>(bins), 0);
    for (double v : values) {
        auto b = static_cast<int>((v - lo) / (hi - lo) * bins);
        b = std::clamp(b, 0, bins - 1);
        ++counts[static_cast<std::size_t>(b)];
    }
    std::vector<double> edges;
    for (int b = 0; b <= bins; ++b)
        edges.push_back(lo + (hi - lo) * b / bins);
    h["edges"] = edges;
    h["counts"] = counts;
    return h;
}

// --------------------------------------------------------------------------

int cmd_sample(const CommonOptions& opts, Eigen::Index n, bool lhs, int lhs_iters,
               bool with_values) {
    const auto problem = resolve_problem(opts);
    const Seed seed{opts.seed, 0};
    const Eigen::MatrixXd X = lhs ? lhs_maximin(problem.domain, n, seed, lhs_iters)
                                  : uniform_sample(problem.domain, n, seed);
    auto out = open_output(opts, "design.csv");
    if (with_values)
        write_design_csv(out, evaluate(problem, X));
    else
        write_design_csv(out, X);
    std::cout << "wrote " << (fs::path(opts.out_dir) / "design.csv").string() << " ("
              << n << " points)\n";
    return kExitOk;
}

// --------------------------------------------------------------------------

struct SensitivityConfig {
    ReplicateOptions replicate;
    double factor = 0.1;
    double alpha_sel = 0.10;
};

IndexTable run_sensitivity(const ProblemSpec* problem, const EvaluatedDesign* design,
                           const SensitivityConfig& config, Seed seed) {
    if (problem) return replicate_indices(*problem, config.replicate, seed);
    return replicate_indices(*design, config.replicate, seed);
}

json sensitivity_metadata(const CommonOptions& opts, const SensitivityConfig& config,
                          const IndexTable& table) {
    json meta;
    meta["seed"] = seed_json(opts);
    meta["benchmark"] = opts.benchmark.empty() ? json(nullptr) : json(opts.benchmark);
    meta["design"] = opts.design_path.empty() ? json(nullptr) : json(opts.design_path);
    meta["mode"] = table.mode;
    meta["n"] = table.n;
    meta["gram_subsample"] = table.gram_subsample;
    meta["reps"] = table.reps;
    meta["alphas"] = table.alphas;
    meta["min_feasible"] = config.replicate.min_feasible;
    meta["normalization"] = table.norm == Normalization::Sum ? "sum" : "cross";
    meta["subsample_scheme"] =
        config.replicate.scheme == GramSubsample::Proportional ? "proportional"
                                                               : "uniform";

    json reps = json::array();
    for (std::size_t r = 0; r < table.values.size(); ++r) {
        json rep;
        rep["T"] = std::vector<double>(
            table.relaxations[r].data(),
            table.relaxations[r].data() + table.relaxations[r].size());
        rep["q_values"] = std::vector<double>(
            table.q_values[r].data(), table.q_values[r].data() + table.q_values[r].size());
        rep["n_in_set"] = table.n_in_set[r];
        rep["degenerate_z"] = table.degenerate_z[r];
        reps.push_back(rep);
    }
    meta["repetitions"] = reps;
    return meta;
}

int cmd_sensitivity(const CommonOptions& opts, const SensitivityConfig& config) {
    std::optional<ProblemSpec> problem;
    std::optional<EvaluatedDesign> design;
    if (!opts.design_path.empty()) {
        std::ifstream in(opts.design_path);
        if (!in) throw ArgumentError("cannot read " + opts.design_path);
        design = read_design_csv(in);
        if (design->f.size() == 0)
            throw ArgumentError("sensitivity needs an evaluated design (f column)");
    } else {
        problem = resolve_problem(opts);
    }

    const auto table = run_sensitivity(problem ? &*problem : nullptr,
                                       design ? &*design : nullptr, config,
                                       Seed{opts.seed, 0});
    {
        auto out = open_output(opts, "indices.csv");
        write_index_table_csv(out, table);
    }
    write_json(opts, "metadata.json", sensitivity_metadata(opts, config, table));
    std::cout << "wrote indices.csv and metadata.json under " << opts.out_dir << '\n';
    return kExitOk;
}

// --------------------------------------------------------------------------

int cmd_sobol(const CommonOptions& opts, Eigen::Index n,
              const std::vector<double>& alphas, Eigen::Index min_feasible,
              const std::string& thresholding, int n_bins) {
    const auto problem = resolve_problem(opts);
    const Seed seed{opts.seed, 0};

    // The relaxation is calibrated once so every alpha sees the same T.
    Eigen::VectorXd T = Eigen::VectorXd::Zero(problem.n_constraints());
    if (problem.n_constraints() > 0) {
        const auto cal =
            evaluate(problem, uniform_sample(problem.domain, n, seed.derive(500)));
        T = auto_relax(cal, std::min<Eigen::Index>(min_feasible, cal.n()));
    }

    std::vector<SobolTable> tables;
    for (std::size_t a = 0; a < alphas.size(); ++a) {
        ThresholdSpec spec;
        spec.alpha = alphas[a];
        spec.T = T;
        if (thresholding == "zero") {
            tables.push_back(pick_freeze_thresholded(
                problem, spec, n, seed.derive(static_cast<std::uint32_t>(a))));
        } else if (thresholding == "conditional") {
            const auto design = evaluate(
                problem, uniform_sample(problem.domain, n,
                                        seed.derive(static_cast<std::uint32_t>(a))));
            const auto [Xs, fs] = conditional_subset(design, spec);
            SobolTable t;
            t.first = given_data_first_order(Xs, fs, n_bins);
            t.total.resize(0);
            t.n_samples = Xs.rows();
            t.estimator = "given-data";
            tables.push_back(std::move(t));
        } else {
            throw ArgumentError("--thresholding must be zero or conditional");
        }
    }

    {
        auto out = open_output(opts, "sobol.csv");
        write_sobol_csv(out, alphas, tables);
    }
    json meta;
    meta["seed"] = seed_json(opts);
    meta["benchmark"] = opts.benchmark;
    meta["n"] = n;
    meta["alphas"] = alphas;
    meta["thresholding"] = thresholding;
    meta["T"] = std::vector<double>(T.data(), T.data() + T.size());
    write_json(opts, "metadata.json", meta);
    std::cout << "wrote sobol.csv and metadata.json under " << opts.out_dir << '\n';
    return kExitOk;
}

// --------------------------------------------------------------------------

struct StudyConfig {
    std::vector<std::string> versions{"original", "greedy"};
    std::string freeze_spec; // "2=-1,4=0.5", 1-based indices
    Eigen::Index n_starts = 100;
    int n_reps = 10;
    int budget = 500;
    double rho_begin = 0.0;
    double rho_end = 0.0;
    SensitivityConfig sensitivity;
};

Screening parse_freeze(const std::string& spec, const ProblemSpec& problem) {
    Screening s;
    std::vector<std::pair<Eigen::Index, double>> pairs;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw ArgumentError("--freeze expects j=value pairs, got '" + item + "'");
        const auto j = static_cast<Eigen::Index>(std::stol(item.substr(0, eq))) - 1;
        if (j < 0 || j >= problem.dim())
            throw ArgumentError("--freeze index out of range");
        pairs.emplace_back(j, std::stod(item.substr(eq + 1)));
    }
    std::sort(pairs.begin(), pairs.end());
    s.frozen_values.resize(static_cast<Eigen::Index>(pairs.size()));
    Eigen::Index k = 0;
    for (const auto& [j, v] : pairs) {
        s.frozen.push_back(j);
        s.frozen_values[k++] = v;
    }
    for (Eigen::Index j = 0; j < problem.dim(); ++j)
        if (std::find(s.frozen.begin(), s.frozen.end(), j) == s.frozen.end())
            s.active.push_back(j);
    if (s.active.empty()) throw ArgumentError("--freeze left no active variables");
    return s;
}

int cmd_study(const CommonOptions& opts, const StudyConfig& config) {
    const auto problem = resolve_problem(opts);
    const Seed seed{opts.seed, 0};

    json meta;
    meta["seed"] = seed_json(opts);
    meta["benchmark"] = opts.benchmark;
    meta["versions"] = config.versions;
    meta["n_starts"] = config.n_starts;
    meta["n_reps"] = config.n_reps;
    meta["budget"] = config.budget;

    // Screening pipeline only when a reduced version asks for it.
    std::optional<Screening> classified;
    std::optional<EvaluatedDesign> doe;
    auto ensure_screening = [&]() {
        if (classified) return;
        const auto table =
            replicate_indices(problem, config.sensitivity.replicate, seed.derive(10));
        classified = classify(table, config.sensitivity.alpha_sel,
                              config.sensitivity.factor);
        doe = evaluate(problem,
                       uniform_sample(problem.domain, config.sensitivity.replicate.n,
                                      seed.derive(11)));
        meta["screening"] = {{"tau", classified->tau},
                             {"alpha_sel", classified->alpha_sel},
                             {"frozen", classified->frozen},
                             {"active", classified->active}};
    };

    std::vector<StudyVersion> versions;
    for (const auto& name : config.versions) {
        if (name == "original") {
            versions.push_back(StudyVersion::original());
        } else if (name == "greedy") {
            ensure_screening();
            const auto frozen = freeze_values(FreezeStrategy::Greedy, *classified,
                                              problem.domain, *doe, seed.derive(12));
            meta["greedy_values"] = std::vector<double>(
                frozen.frozen_values.data(),
                frozen.frozen_values.data() + frozen.frozen_values.size());
            versions.push_back(StudyVersion::greedy(frozen));
        } else if (name == "random") {
            ensure_screening();
            versions.push_back(StudyVersion::random(*classified));
        } else {
            throw ArgumentError("unknown version '" + name +
                                "' (expected original, greedy, or random)");
        }
    }
    if (!config.freeze_spec.empty()) {
        const auto s = parse_freeze(config.freeze_spec, problem);
        meta["fixed_values"] = std::vector<double>(
            s.frozen_values.data(), s.frozen_values.data() + s.frozen_values.size());
        versions.push_back(StudyVersion::fixed("fixed", s));
    }
    if (versions.empty()) throw ArgumentError("no versions requested");

    StudyOptions study;
    study.n_starts = config.n_starts;
    study.n_reps = config.n_reps;
    study.dfo.budget = config.budget;
    study.dfo.rho_begin = config.rho_begin;
    study.dfo.rho_end = config.rho_end;
    study.workers = opts.workers;

    const auto records = run_study(problem, versions, study, seed.derive(20));
    {
        auto out = open_output(opts, "study.csv");
        write_study_csv(out, records);
    }

    json hists;
    for (const auto& version : versions) {
        std::vector<double> f_values;
        std::vector<double> call_values;
        for (const auto& rec : records) {
            if (rec.version != version.label) continue;
            f_values.push_back(rec.f_final);
            call_values.push_back(static_cast<double>(rec.n_calls));
        }
        hists[version.label] = {{"f_final", histogram_json(f_values, 40)},
                                {"n_calls", histogram_json(call_values, 40)}};
    }
    write_json(opts, "histograms.json", hists);
    write_json(opts, "metadata.json", meta);
    std::cout << "wrote study.csv, histograms.json, metadata.json under "
              << opts.out_dir << '\n';
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"goal-oriented sensitivity analysis toolkit"};
    app.require_subcommand(1);

    CommonOptions common;

    // sample ----------------------------------------------------------------
    auto* sample = app.add_subcommand("sample", "draw and write a design CSV");
    Eigen::Index sample_n = 100;
    bool sample_lhs = false;
    bool sample_eval = false;
    int lhs_iters = 1000;
    add_common(sample, common, false);
    sample->add_option("--n", sample_n, "number of points")->capture_default_str();
    sample->add_flag("--lhs", sample_lhs, "maximin Latin hypercube instead of uniform");
    sample->add_flag("--evaluate", sample_eval,
                     "append objective and constraint columns");
    sample->add_option("--lhs-iters", lhs_iters, "maximin improvement iterations")
        ->capture_default_str();

    // sensitivity -----------------------------------------------------------
    auto* sens = app.add_subcommand("sensitivity", "HSIC-IT index table");
    SensitivityConfig sens_config;
    std::string norm_name = "sum";
    std::string scheme_name = "proportional";
    add_common(sens, common);
    sens->add_option("--n", sens_config.replicate.n, "DOE size per repetition")
        ->capture_default_str();
    sens->add_option("--gram-subsample", sens_config.replicate.gram_subsample,
                     "points entering each Gram matrix")
        ->capture_default_str();
    sens->add_option("--reps", sens_config.replicate.reps, "repetitions")
        ->capture_default_str();
    sens->add_option("--alphas", sens_config.replicate.alphas, "alpha grid")
        ->capture_default_str();
    sens->add_option("--min-feasible", sens_config.replicate.min_feasible,
                     "auto-relaxation target")
        ->capture_default_str();
    sens->add_option("--normalization", norm_name, "sum or cross")
        ->capture_default_str();
    sens->add_option("--subsample-scheme", scheme_name, "proportional or uniform")
        ->capture_default_str();

    // sobol -----------------------------------------------------------------
    auto* sobol = app.add_subcommand("sobol", "variance-based index sweep");
    Eigen::Index sobol_n = 10000;
    std::vector<double> sobol_alphas{0.10, 0.40, 0.70, 1.00};
    Eigen::Index sobol_min_feasible = 100;
    std::string thresholding = "zero";
    int n_bins = 20;
    add_common(sobol, common, false);
    sobol->add_option("--n", sobol_n, "pick-freeze block size")->capture_default_str();
    sobol->add_option("--alphas", sobol_alphas, "alpha grid")->capture_default_str();
    sobol->add_option("--min-feasible", sobol_min_feasible, "auto-relaxation target")
        ->capture_default_str();
    sobol->add_option("--thresholding", thresholding, "zero or conditional")
        ->capture_default_str();
    sobol->add_option("--bins", n_bins, "given-data bin count")->capture_default_str();

    // study -----------------------------------------------------------------
    auto* study = app.add_subcommand("study", "multistart optimization comparison");
    StudyConfig study_config;
    add_common(study, common, false);
    study->add_option("--versions", study_config.versions,
                      "versions to run (original, greedy, random)")
        ->capture_default_str();
    study->add_option("--freeze", study_config.freeze_spec,
                      "extra fixed version, e.g. 2=-1 or 2=-1,3=0.5 (1-based)");
    study->add_option("--starts", study_config.n_starts, "LHS start points")
        ->capture_default_str();
    study->add_option("--study-reps", study_config.n_reps, "study repetitions")
        ->capture_default_str();
    study->add_option("--budget", study_config.budget, "objective call budget per run")
        ->capture_default_str();
    study->add_option("--rho-begin", study_config.rho_begin,
                      "initial trust radius (0 = 0.1 x min box width)");
    study->add_option("--rho-end", study_config.rho_end,
                      "final trust radius (0 = 1e-6 x min box width)");
    study->add_option("--n", study_config.sensitivity.replicate.n,
                      "sensitivity DOE size")
        ->capture_default_str();
    study->add_option("--gram-subsample",
                      study_config.sensitivity.replicate.gram_subsample,
                      "points entering each Gram matrix")
        ->capture_default_str();
    study->add_option("--reps", study_config.sensitivity.replicate.reps,
                      "sensitivity repetitions")
        ->capture_default_str();
    study->add_option("--alphas", study_config.sensitivity.replicate.alphas,
                      "sensitivity alpha grid")
        ->capture_default_str();
    study->add_option("--min-feasible",
                      study_config.sensitivity.replicate.min_feasible,
                      "auto-relaxation target")
        ->capture_default_str();
    study->add_option("--factor", study_config.sensitivity.factor,
                      "screening threshold factor")
        ->capture_default_str();
    study->add_option("--alpha-sel", study_config.sensitivity.alpha_sel,
                      "alpha level used for classification")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        sens_config.replicate.workers = common.workers;
        if (norm_name == "cross")
            sens_config.replicate.norm = Normalization::Cross;
        else if (norm_name != "sum")
            throw ArgumentError("--normalization must be sum or cross");
        if (scheme_name == "uniform")
            sens_config.replicate.scheme = GramSubsample::Uniform;
        else if (scheme_name != "proportional")
            throw ArgumentError("--subsample-scheme must be proportional or uniform");
        study_config.sensitivity.replicate.workers = common.workers;

        if (sample->parsed())
            return cmd_sample(common, sample_n, sample_lhs, lhs_iters, sample_eval);
        if (sens->parsed()) return cmd_sensitivity(common, sens_config);
        if (sobol->parsed())
            return cmd_sobol(common, sobol_n, sobol_alphas, sobol_min_feasible,
                             thresholding, n_bins);
        if (study->parsed()) return cmd_study(common, study_config);
        return kExitConfig;
    } catch (const DegenerateError& e) {
        std::cerr << "degenerate data: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const InfeasibleError& e) {
        std::cerr << "degenerate data: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    }
}
