#include <cp3o/cli.hpp>

#include <cp3o/bench.hpp>
#include <cp3o/detector.hpp>
#include <cp3o/eval.hpp>
#include <cp3o/io.hpp>
#include <cp3o/oracle.hpp>
#include <cp3o/simgen.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>
#include <thread>

namespace cp3o {

namespace {

constexpr int exit_input = 1;
constexpr int exit_config = 2;

struct DetectorFlags {
    DetectorConfig config;
    bool no_prune = false;
    bool complete_stat = false;

    void attach(CLI::App& cmd) {
        cmd.add_option("--alpha", config.alpha, "distance exponent in (0, 2)")
            ->capture_default_str();
        cmd.add_option("--delta", config.delta, "window half-width; min segment is delta+1")
            ->capture_default_str();
        cmd.add_option("--max-cps", config.max_change_points, "largest change count K")
            ->capture_default_str();
        cmd.add_option("--epsilon", config.epsilon, "pruning confidence in (0, 1)")
            ->capture_default_str();
        cmd.add_option("--seed", config.seed, "seed for all randomness")->capture_default_str();
        cmd.add_option("--gamma-samples", config.gamma_samples,
                       "quadruples drawn for the pruning threshold (0: ceil(2/epsilon))")
            ->capture_default_str();
        cmd.add_flag("--no-prune", no_prune, "disable probabilistic pruning");
        cmd.add_flag("--complete-stat", complete_stat, "complete instead of incomplete statistic");
        cmd.add_flag("--biased-variance", config.biased_variance,
                     "1/(K-1) variance of Gof increments when selecting k");
    }

    DetectorConfig resolve() const {
        DetectorConfig c = config;
        c.use_pruning = !no_prune;
        c.use_incomplete = !complete_stat;
        return c;
    }
};

struct ScenarioFlags {
    std::string scenario;
    std::size_t length = 0;
    std::size_t num_cps = 3;

    void attach(CLI::App& cmd) {
        cmd.add_option("--scenario", scenario,
                       "gauss-mv | mean-tail | copula (change points equally spaced)")
            ->required();
        cmd.add_option("--length", length,
                       "series length (default 400, or 300 for copula)");
        cmd.add_option("--num-cps", num_cps, "change points for gauss-mv")->capture_default_str();
    }

    std::optional<ScenarioSpec> resolve(std::ostream& err) const {
        const auto kind = parse_scenario(scenario);
        if (!kind) {
            err << "unknown scenario '" << scenario << "'; expected gauss-mv, mean-tail or copula\n";
            return std::nullopt;
        }
        ScenarioSpec spec;
        spec.kind = *kind;
        spec.length = length != 0 ? length : (*kind == ScenarioKind::copula ? 300 : 400);
        spec.num_change_points = num_cps;
        return spec;
    }
};

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
    } else {
        write_text(path, text);
    }
}

int cmd_detect(const std::string& input, const std::string& output, const DetectorFlags& flags,
               std::ostream& out, std::ostream& err) {
    const auto series = read_csv(input);
    const auto config = flags.resolve();
    for (const auto& w : validate_config(config, series).warnings) {
        err << "warning: " << w << '\n';
    }
    const auto result = detect(series, config);
    emit(result_to_json(result).dump(2) + "\n", output, out);
    return 0;
}

int cmd_simulate(const ScenarioFlags& flags, std::uint64_t seed, const std::string& output,
                 const std::string& truth_path, std::ostream& out, std::ostream& err) {
    const auto spec = flags.resolve(err);
    if (!spec) {
        return exit_config;
    }
    SimulatedSeries sim = [&] {
        try {
            return generate(*spec, seed);
        } catch (const std::invalid_argument& e) {
            throw ConfigError({e.what()});
        }
    }();
    emit(format_csv(sim.series), output, out);
    if (!truth_path.empty()) {
        write_text(truth_path, truth_to_json(sim.truth).dump(2) + "\n");
    }
    return 0;
}

int cmd_evaluate(const std::string& truth_path, const std::string& estimate_path,
                 std::ostream& out, std::ostream& err) {
    const auto truth = segmentation_from_json(read_json(truth_path));
    const auto estimate = segmentation_from_json(read_json(estimate_path));
    if (truth.series_length != estimate.series_length) {
        err << "length mismatch: truth covers " << truth.series_length << ", estimate covers "
            << estimate.series_length << '\n';
        return exit_config;
    }
    const auto score = adjusted_rand_score(truth, estimate);
    Json j;
    j["adjusted_rand"] = score.value;
    j["raw"] = score.raw;
    out << j.dump() << '\n';
    return 0;
}

std::string bench_table(const BenchReport& r) {
    std::ostringstream os;
    os << std::fixed;
    os << "scenario " << scenario_name(r.scenario.kind) << ", T=" << r.scenario.length
       << ", K=" << r.config.max_change_points << ", replicates=" << r.replicates << '\n';
    os << std::setw(12) << "" << std::setw(12) << "mean" << std::setw(12) << "se" << '\n';
    auto line = [&](const char* name, const MeanSe& m, int precision) {
        os << std::setw(12) << std::left << name << std::right << std::setprecision(precision)
           << std::setw(12) << m.mean << std::setw(12) << m.se << '\n';
    };
    line("Rand", r.rand, 3);
    line("# of cps", r.k_hat, 3);
    line("Time(s)", r.seconds, 4);
    line("Evaluations", r.evaluations, 0);
    return os.str();
}

int cmd_bench(const ScenarioFlags& scenario, std::size_t replicates, const DetectorFlags& flags,
              const std::string& output, bool timing, std::ostream& out, std::ostream& err) {
    const auto spec = scenario.resolve(err);
    if (!spec) {
        return exit_config;
    }
    const auto config = flags.resolve();
    BenchReport report;
    try {
        report = run_benchmark(*spec, replicates, config, config.seed, worker_threads());
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError({e.what()});
    }
    out << bench_table(report);
    if (!output.empty()) {
        write_text(output, bench_to_json(report, timing).dump(2) + "\n");
    }
    return 0;
}

int cmd_verify(std::size_t max_t, std::size_t cases, std::uint64_t seed, bool inject_fault,
               std::ostream& out) {
    const auto grid = oracle_grid(cases, max_t, seed);
    std::size_t passed = 0;
    std::size_t exact_passed = 0;
    char buf[160];
    for (const auto& c : grid) {
        const auto check = check_oracle_case(c, 1e-10, inject_fault ? 1e-6 : 0.0);
        const auto exact = check_exact_case(c);
        passed += check.passed();
        exact_passed += exact.passed();
        std::snprintf(buf, sizeof buf, "case %03zu T=%2zu k=%zu dp=%.12f oracle=%.12f exact=%.12f %s\n",
                      c.index, c.series.length(), c.k, check.dp_value, check.oracle_value,
                      exact.dp_value, check.passed() ? "PASS" : "FAIL");
        out << buf;
    }
    out << "dynamic program: " << passed << "/" << grid.size() << " cases match the oracle\n";
    out << "exact-state reference: " << exact_passed << "/" << grid.size()
        << " cases match the oracle\n";
    return passed == grid.size() ? 0 : 1;
}

} // namespace

unsigned worker_threads() {
    if (const char* env = std::getenv("CP3O_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n > 0) {
            return static_cast<unsigned>(n);
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multiple change-point detection with energy statistics and probabilistic pruning",
                 "cp3o"};
    app.require_subcommand(1);

    auto* detect_cmd = app.add_subcommand("detect", "segment a CSV series and write result JSON");
    std::string input;
    std::string output;
    DetectorFlags detect_flags;
    detect_cmd->add_option("--input", input, "CSV series, one row per time step")->required();
    detect_cmd->add_option("--output", output, "result JSON path (default stdout)");
    detect_flags.attach(*detect_cmd);

    auto* sim_cmd = app.add_subcommand("simulate", "generate a scenario series and its truth");
    ScenarioFlags sim_flags;
    std::uint64_t sim_seed = 0;
    std::string sim_output;
    std::string sim_truth;
    sim_flags.attach(*sim_cmd);
    sim_cmd->add_option("--seed", sim_seed, "generator seed")->capture_default_str();
    sim_cmd->add_option("--output", sim_output, "series CSV path (default stdout)");
    sim_cmd->add_option("--truth", sim_truth, "truth JSON path");

    auto* eval_cmd = app.add_subcommand("evaluate", "adjusted Rand index of two segmentations");
    std::string eval_truth;
    std::string eval_input;
    eval_cmd->add_option("--truth", eval_truth, "truth or result JSON")->required();
    eval_cmd->add_option("--input", eval_input, "truth or result JSON to score")->required();

    auto* bench_cmd = app.add_subcommand("bench", "replicated simulation study");
    ScenarioFlags bench_scenario;
    DetectorFlags bench_flags;
    std::size_t replicates = 100;
    std::string bench_output;
    bool bench_timing = false;
    bench_scenario.attach(*bench_cmd);
    bench_flags.attach(*bench_cmd);
    bench_cmd->add_option("--replicates", replicates, "number of series")->capture_default_str();
    bench_cmd->add_option("--output", bench_output, "report JSON path");
    bench_cmd->add_flag("--timing", bench_timing, "include wall times in the JSON report");

    auto* verify_cmd = app.add_subcommand("verify", "dynamic program against brute force");
    std::size_t max_t = 40;
    std::size_t cases = 60;
    std::uint64_t verify_seed = 0;
    bool inject_fault = false;
    verify_cmd->add_option("--max-t", max_t, "largest series length in the grid (>= 18)")
        ->capture_default_str();
    verify_cmd->add_option("--cases", cases, "grid size")->capture_default_str();
    verify_cmd->add_option("--seed", verify_seed, "grid seed")->capture_default_str();
    verify_cmd->add_flag("--inject-fault", inject_fault, "perturb the DP value (negative control)");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    if (args.empty()) {
        argv.push_back("cp3o");
    }
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : exit_input;
    }

    try {
        if (detect_cmd->parsed()) {
            return cmd_detect(input, output, detect_flags, out, err);
        }
        if (sim_cmd->parsed()) {
            return cmd_simulate(sim_flags, sim_seed, sim_output, sim_truth, out, err);
        }
        if (eval_cmd->parsed()) {
            return cmd_evaluate(eval_truth, eval_input, out, err);
        }
        if (bench_cmd->parsed()) {
            return cmd_bench(bench_scenario, replicates, bench_flags, bench_output, bench_timing,
                             out, err);
        }
        if (verify_cmd->parsed()) {
            return cmd_verify(max_t, cases, verify_seed, inject_fault, out);
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return exit_config;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_config;
    }
    return exit_input;
}

} // namespace cp3o
