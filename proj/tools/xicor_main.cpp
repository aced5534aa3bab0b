#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "xicor/dataset.hpp"
#include "xicor/parallel.hpp"
#include "xicor/records.hpp"
#include "xicor/resample.hpp"
#include "xicor/study.hpp"
#include "xicor/truth.hpp"

namespace {

using namespace xicor;

// Exit codes are a stable scripting contract.
constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitNumeric = 4;

std::uint64_t realize_seed(const std::optional<std::uint64_t>& seed_flag) {
    if (seed_flag) return *seed_flag;
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

void print_record(const Record& record, const std::string& format, std::ostream& out) {
    if (format == "json") {
        out << record_to_json_line(record) << '\n';
    } else {
        out << csv_header(record) << '\n' << csv_row(record) << '\n';
    }
}

Estimator parse_estimator(const std::string& name) {
    if (name == "raw") return Estimator::Raw;
    if (name == "normalized") return Estimator::Normalized;
    throw precondition_error("unknown estimator '" + name + "'");
}

IntervalMethod parse_method(const std::string& name) {
    if (name == "m-out-of-n") return IntervalMethod::MOutOfN;
    if (name == "normal") return IntervalMethod::NormalDK;
    if (name == "percentile") return IntervalMethod::Percentile;
    if (name == "bca") return IntervalMethod::BCa;
    throw precondition_error("unknown interval method '" + name + "'");
}

bool has_distinct_ys_only(const PairedSample& sample) {
    std::vector<double> ys(sample.ys);
    std::sort(ys.begin(), ys.end());
    return std::adjacent_find(ys.begin(), ys.end()) == ys.end();
}

void echo_model(Record& record, const ModelSpec& spec) {
    record["model"] = spec.id;
    record["sigma"] = spec.sigma;
    record["m"] = spec.m;
    record["m_prime"] = spec.m_prime;
    record["p"] = spec.p;
    record["p_prime"] = spec.p_prime;
    record["a"] = spec.a;
    record["b"] = spec.b;
}

struct ModelFlags {
    int id = 1;
    std::optional<double> sigma;
    std::optional<int> m, m_prime;
    std::optional<double> p, p_prime;
    std::optional<double> a, b;

    ModelSpec resolve() const {
        ModelSpec spec = ModelSpec::defaults(id);
        if (sigma) spec.sigma = *sigma;
        if (m) spec.m = *m;
        if (m_prime) spec.m_prime = *m_prime;
        if (p) spec.p = *p;
        if (p_prime) spec.p_prime = *p_prime;
        if (a) spec.a = *a;
        if (b) spec.b = *b;
        spec.validate();
        return spec;
    }
};

void add_model_flags(CLI::App* cmd, ModelFlags& flags) {
    cmd->add_option("--model", flags.id, "Model id (1-10)")->required()->check(CLI::Range(1, 10));
    cmd->add_option("--sigma", flags.sigma, "Noise standard deviation (models 1-3, 5-7)");
    cmd->add_option("--m", flags.m, "Support size m (models 5-7, 9, 10)");
    cmd->add_option("--mp", flags.m_prime, "Support size m' (models 5-7, 9, 10)");
    cmd->add_option("--p", flags.p, "Success probability p (models 4, 10)");
    cmd->add_option("--pp", flags.p_prime, "Success probability p' (models 4, 10)");
    cmd->add_option("--a", flags.a, "Lower range bound (default -1)");
    cmd->add_option("--b", flags.b, "Upper range bound (default 1)");
}

std::vector<int> parse_grid(const std::string& text) {
    std::vector<int> grid;
    if (const auto dots = text.find(".."); dots != std::string::npos) {
        // "lo..hi": 1-2-5 series per decade, endpoints included.
        const int lo = std::stoi(text.substr(0, dots));
        const int hi = std::stoi(text.substr(dots + 2));
        if (lo < 2 || hi <= lo) throw precondition_error("grid: need 2 <= lo < hi");
        grid.push_back(lo);
        static constexpr int kSteps[] = {1, 2, 5};
        for (long decade = 1; decade <= 1000000000L; decade *= 10)
            for (int s : kSteps) {
                const long v = s * decade;
                if (v > lo && v < hi) grid.push_back(static_cast<int>(v));
            }
        grid.push_back(hi);
        std::sort(grid.begin(), grid.end());
        grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
        return grid;
    }
    std::string token;
    std::istringstream iss(text);
    while (std::getline(iss, token, ','))
        if (!token.empty()) grid.push_back(std::stoi(token));
    if (grid.empty()) throw precondition_error("grid: no values");
    return grid;
}

struct OutputTarget {
    std::ofstream file;
    bool to_stdout = false;

    explicit OutputTarget(const std::string& path) {
        if (path == "-") {
            to_stdout = true;
            return;
        }
        file.open(path);
        if (!file) throw precondition_error("cannot open output path '" + path + "'");
    }
    std::ostream& stream() { return to_stdout ? std::cout : file; }
};

int run(int argc, char** argv) {
    CLI::App app{"Chatterjee rank correlation with upper-bound normalization, bootstrap "
                 "confidence intervals, asymptotic ground truth, and Monte Carlo studies"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "csv";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));

    // xi: point estimates from a dataset file.
    auto* cmd_xi = app.add_subcommand("xi", "Estimate xi from a dataset");
    std::string xi_input;
    bool xi_normalized = false;
    std::optional<std::uint64_t> xi_seed;
    cmd_xi->add_option("input", xi_input, "Dataset file (header row with x and y columns)")
        ->required();
    cmd_xi->add_flag("--normalized", xi_normalized, "Report the upper-bound-normalized estimator");
    cmd_xi->add_option("--seed", xi_seed, "Seed for tie-break draws");

    // ci: confidence intervals from a dataset file.
    auto* cmd_ci = app.add_subcommand("ci", "Confidence interval for xi from a dataset");
    std::string ci_input, ci_method = "m-out-of-n", ci_estimator = "normalized";
    double ci_conf = 0.9;
    int ci_R = 1000;
    std::optional<int> ci_m;
    std::optional<std::uint64_t> ci_seed;
    unsigned ci_threads = default_threads();
    cmd_ci->add_option("input", ci_input, "Dataset file")->required();
    cmd_ci->add_option("--method", ci_method, "Interval construction")
        ->check(CLI::IsMember({"m-out-of-n", "normal", "percentile", "bca"}));
    cmd_ci->add_option("--conf", ci_conf, "Confidence level (default 0.9)");
    cmd_ci->add_option("-R,--replicates", ci_R, "Bootstrap replicates (default 1000)");
    cmd_ci->add_option("--m", ci_m, "Resample size for m-out-of-n (default round(2 sqrt(n)))");
    cmd_ci->add_option("--estimator", ci_estimator, "raw or normalized")
        ->check(CLI::IsMember({"raw", "normalized"}));
    cmd_ci->add_option("--seed", ci_seed, "Seed");
    cmd_ci->add_option("--threads", ci_threads, "Worker thread cap");

    // truth: asymptotic xi for a model.
    auto* cmd_truth = app.add_subcommand("truth", "Asymptotic xi for a simulated model");
    ModelFlags truth_model;
    add_model_flags(cmd_truth, truth_model);
    double truth_abs_tol = 1e-6, truth_rel_tol = 1e-6, truth_truncation = 10.0;
    cmd_truth->add_option("--abs-tol", truth_abs_tol, "Quadrature absolute tolerance");
    cmd_truth->add_option("--rel-tol", truth_rel_tol, "Quadrature relative tolerance");
    cmd_truth->add_option("--truncation", truth_truncation, "Tail truncation in noise sd");

    // simulate: Monte Carlo studies.
    auto* cmd_sim = app.add_subcommand("simulate", "Monte Carlo studies (bias, coverage, varfit)");
    std::string sim_kind;
    ModelFlags sim_model;
    std::string sim_n = "50";
    std::string sim_grid = "50..5000";
    int sim_N = -1;
    int sim_R = 1000;
    std::string sim_method = "m-out-of-n", sim_estimator = "normalized";
    double sim_conf = 0.9;
    std::optional<std::uint64_t> sim_seed;
    std::string sim_out = "-";
    unsigned sim_threads = default_threads();
    cmd_sim->add_option("--kind", sim_kind, "bias | coverage | varfit")
        ->required()
        ->check(CLI::IsMember({"bias", "coverage", "varfit"}));
    add_model_flags(cmd_sim, sim_model);
    cmd_sim->add_option("--n", sim_n, "Sample size(s), comma separated (bias, coverage)");
    cmd_sim->add_option("--grid", sim_grid, "n grid for varfit: comma list or lo..hi");
    cmd_sim->add_option("--N", sim_N, "Replications (defaults: bias/varfit 10000, coverage 500)");
    cmd_sim->add_option("-R,--replicates", sim_R, "Bootstrap replicates per trial (coverage)");
    cmd_sim->add_option("--method", sim_method, "Interval method (coverage)")
        ->check(CLI::IsMember({"m-out-of-n", "normal", "percentile", "bca"}));
    cmd_sim->add_option("--estimator", sim_estimator, "raw or normalized (coverage, varfit)")
        ->check(CLI::IsMember({"raw", "normalized"}));
    cmd_sim->add_option("--conf", sim_conf, "Confidence level (coverage)");
    cmd_sim->add_option("--seed", sim_seed, "Master seed");
    cmd_sim->add_option("--out", sim_out, "Output path for rows ('-' for stdout)");
    cmd_sim->add_option("--threads", sim_threads, "Worker thread cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParse;
    }

    if (app.got_subcommand(cmd_xi)) {
        const PairedSample sample = load_dataset_file(xi_input);
        const Seed seed{realize_seed(xi_seed)};
        const Estimator which = xi_normalized ? Estimator::Normalized : Estimator::Raw;
        const double value = estimate(which, sample, seed);

        Record record;
        record["command"] = "xi";
        record["version"] = kVersion;
        record["input"] = xi_input;
        record["n"] = sample.size();
        record["estimator"] = estimator_name(which);
        record["seed"] = seed.value;
        record["xi"] = value;
        print_record(record, format, std::cout);
        return kExitOk;
    }

    if (app.got_subcommand(cmd_ci)) {
        const PairedSample sample = load_dataset_file(ci_input);
        const Seed seed{realize_seed(ci_seed)};
        const Estimator which = parse_estimator(ci_estimator);
        const IntervalMethod method = parse_method(ci_method);

        if ((method == IntervalMethod::Percentile || method == IntervalMethod::BCa) &&
            has_distinct_ys_only(sample)) {
            std::cerr << "warning: the n-out-of-n bootstrap is known-unreliable for continuous Y; "
                         "its intervals can miss the point estimate entirely. Consider "
                         "--method m-out-of-n or normal.\n";
        }

        IntervalEstimate iv;
        switch (method) {
            case IntervalMethod::MOutOfN:
                iv = ci_m_out_of_n(sample, ci_conf, ci_R, ci_m, seed, which, ci_threads);
                break;
            case IntervalMethod::NormalDK:
                iv = ci_normal_dk(sample, ci_conf, ci_R, seed, which, ci_threads);
                break;
            case IntervalMethod::Percentile:
                iv = ci_n_out_of_n(sample, ci_conf, ci_R, NOutOfNVariant::Percentile, seed, which,
                                   ci_threads);
                break;
            case IntervalMethod::BCa:
                iv = ci_n_out_of_n(sample, ci_conf, ci_R, NOutOfNVariant::BCa, seed, which,
                                   ci_threads);
                break;
        }

        Record record;
        record["command"] = "ci";
        record["version"] = kVersion;
        record["input"] = ci_input;
        record["n"] = sample.size();
        record["method"] = interval_method_name(iv.method);
        record["estimator"] = estimator_name(which);
        record["conf"] = iv.level;
        record["R"] = iv.replicates;
        record["m"] = iv.m;
        record["seed"] = seed.value;
        record["point"] = iv.point;
        record["lower"] = iv.lower;
        record["upper"] = iv.upper;
        record["degenerate"] = iv.degenerate;
        record["bca_fallback"] = iv.bca_fallback;
        print_record(record, format, std::cout);
        return kExitOk;
    }

    if (app.got_subcommand(cmd_truth)) {
        const ModelSpec spec = truth_model.resolve();
        QuadratureSpec qspec;
        qspec.abs_tol = truth_abs_tol;
        qspec.rel_tol = truth_rel_tol;
        qspec.truncation = truth_truncation;
        const double value = xi_true(spec, qspec);

        Record record;
        record["command"] = "truth";
        record["version"] = kVersion;
        echo_model(record, spec);
        record["abs_tol"] = qspec.abs_tol;
        record["rel_tol"] = qspec.rel_tol;
        record["truncation"] = qspec.truncation;
        record["xi"] = value;
        if (spec.id == 1 && spec.sigma > 0.0) {
            record["xi_symbolic"] = xi_model1_symbolic(spec.a, spec.b, spec.sigma, qspec);
            record["xi_numeric"] =
                xi_continuous_numeric(continuous_law(spec, qspec.truncation), qspec);
        }
        print_record(record, format, std::cout);
        return kExitOk;
    }

    // simulate
    const ModelSpec spec = sim_model.resolve();
    const Seed seed{realize_seed(sim_seed)};
    const Estimator which = parse_estimator(sim_estimator);
    OutputTarget out(sim_out);
    std::ostream& summary = out.to_stdout ? std::cerr : std::cout;

    auto emit = [&, first = true](const Record& record) mutable {
        if (format == "json") {
            out.stream() << record_to_json_line(record) << '\n';
            return;
        }
        if (first) {
            out.stream() << csv_header(record) << '\n';
            first = false;
        }
        out.stream() << csv_row(record) << '\n';
    };

    auto base_record = [&](const char* kind) {
        Record record;
        record["command"] = "simulate";
        record["kind"] = kind;
        record["version"] = kVersion;
        echo_model(record, spec);
        return record;
    };

    int rows = 0;
    if (sim_kind == "bias") {
        const int N = sim_N > 0 ? sim_N : 10000;
        for (int n : parse_grid(sim_n)) {
            const auto [raw, normalized] = run_bias_mse(spec, n, N, seed, sim_threads);
            for (const StudyReport* report : {&raw, &normalized}) {
                Record record = base_record("bias");
                record["n"] = report->n;
                record["N"] = report->replications;
                record["estimator"] = estimator_name(report->estimator);
                record["xi_true"] = report->xi_truth;
                record["mean_estimate"] = report->mean_estimate;
                record["bias"] = report->bias;
                record["mse"] = report->mse;
                record["variance"] = report->variance;
                record["seed"] = seed.value;
                emit(record);
                ++rows;
            }
        }
    } else if (sim_kind == "coverage") {
        const int N = sim_N > 0 ? sim_N : 500;
        const IntervalMethod method = parse_method(sim_method);
        for (int n : parse_grid(sim_n)) {
            const CoverageReport report =
                run_coverage(spec, n, N, sim_R, method, sim_conf, which, seed, sim_threads);
            Record record = base_record("coverage");
            record["n"] = report.n;
            record["N"] = report.replications;
            record["R"] = report.bootstrap_replicates;
            record["method"] = interval_method_name(report.method);
            record["estimator"] = estimator_name(report.estimator);
            record["conf"] = report.conf;
            record["xi_true"] = report.xi_truth;
            record["coverage"] = report.coverage;
            record["binom_se"] = report.binom_se;
            record["mean_width"] = report.mean_width;
            record["seed"] = seed.value;
            emit(record);
            ++rows;
        }
    } else {
        const int N = sim_N > 0 ? sim_N : 10000;
        const VarianceFit fit =
            variance_scaling_fit(spec, parse_grid(sim_grid), N, which, seed, sim_threads);
        Record record = base_record("varfit");
        record["N"] = N;
        record["estimator"] = estimator_name(fit.estimator);
        std::string grid_text, var_text;
        for (std::size_t i = 0; i < fit.n_grid.size(); ++i) {
            if (i) {
                grid_text += ';';
                var_text += ';';
            }
            grid_text += std::to_string(fit.n_grid[i]);
            var_text += format_number(fit.variances[i]);
        }
        record["grid"] = grid_text;
        record["variances"] = var_text;
        record["log_V"] = fit.log_V;
        record["gamma"] = fit.gamma;
        record["rss"] = fit.rss;
        record["seed"] = seed.value;
        emit(record);
        ++rows;
    }

    summary << "simulate " << sim_kind << ": model " << spec.id << ", " << rows
            << (rows == 1 ? " row" : " rows") << " written to "
            << (out.to_stdout ? "stdout" : sim_out) << " (seed " << seed.value << ")\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const xicor::parse_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const xicor::precondition_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitPrecondition;
    } catch (const xicor::numeric_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    }
}
