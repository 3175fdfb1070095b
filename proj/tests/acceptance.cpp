// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <cp3o/bench.hpp>
#include <cp3o/cli.hpp>
#include <cp3o/detector.hpp>
#include <cp3o/energy.hpp>
#include <cp3o/io.hpp>
#include <cp3o/oracle.hpp>
#include <cp3o/search.hpp>
#include <cp3o/selection.hpp>
#include <cp3o/simgen.hpp>

#include "support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <unistd.h>

using namespace cp3o;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Verdict {
    bool pass;
    std::string detail;
};

int failures = 0;

void report(int id, const char* name, const std::function<Verdict()>& body) {
    Verdict v{false, ""};
    try {
        v = body();
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    failures += !v.pass;
    std::printf("[%s] %2d %s: %s\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Verdict oracle_equivalence() {
    const auto start = Clock::now();
    const auto grid = oracle_grid(60, 40, 0);
    std::size_t passed = 0;
    std::size_t exact = 0;
    double worst = 0.0;
    for (const auto& c : grid) {
        const auto check = check_oracle_case(c);
        passed += check.passed();
        exact += check_exact_case(c).passed();
        worst = std::max(worst, check.oracle_value - check.dp_value);
    }
    const double elapsed = seconds_since(start);
    const bool ok = passed == grid.size() && elapsed < 120.0;
    return {ok, fmt("%zu/%zu cases match the exhaustive optimum (largest shortfall %.3g), "
                    "exact-state reference %zu/%zu, %.1f s",
                    passed, grid.size(), worst, exact, grid.size(), elapsed)};
}

Verdict incomplete_coincidence() {
    std::size_t comparisons = 0;
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 30; ++i) {
        const std::size_t delta = 2 + i % 14;
        const std::size_t T = 2 * delta + 3;
        const auto s = cp3o::testing::gaussian_series(T, 1 + i % 3, 0.0, 1.0 + i, 3000 + i);
        const double alpha = 0.2 + 1.7 * static_cast<double>(i) / 29.0;
        for (std::size_t lo = 1; lo <= T; ++lo) {
            for (std::size_t n = 2; n <= delta; ++n) {
                for (std::size_t m = 2; m <= delta && lo + n + m - 1 <= T; ++m) {
                    const auto x = segment_view(s, lo, lo + n - 1);
                    const auto y = segment_view(s, lo + n, lo + n + m - 1);
                    worst = std::max(worst, std::abs(incomplete_energy(x, y, alpha, delta) -
                                                     complete_energy(x, y, alpha)));
                    ++comparisons;
                }
            }
        }
    }
    return {worst <= 1e-12,
            fmt("%zu splits over 30 series, max |incomplete - complete| = %.3g (tol 1e-12)",
                comparisons, worst)};
}

Verdict table1_small() {
    const auto r = run_benchmark({ScenarioKind::gauss_mv, 400, 3}, 100, DetectorConfig{}, 0, 1);
    const bool ok = r.rand.mean >= 0.90 && r.k_hat.mean >= 2.3 && r.k_hat.mean <= 3.2 &&
                    r.seconds.mean <= 1.0;
    return {ok, fmt("gauss-mv T=400: Rand %.3f (>= 0.90), k_hat %.2f (in [2.3, 3.2]), "
                    "%.4f s per series (<= 1)",
                    r.rand.mean, r.k_hat.mean, r.seconds.mean)};
}

Verdict table2_small() {
    const auto r = run_benchmark({ScenarioKind::mean_tail, 400, 3}, 100, DetectorConfig{}, 0, 1);
    const bool ok = r.rand.mean >= 0.80 && r.k_hat.mean >= 2.0 && r.k_hat.mean <= 3.2;
    return {ok, fmt("mean-tail T=400: Rand %.3f (>= 0.80), k_hat %.2f (in [2.0, 3.2])",
                    r.rand.mean, r.k_hat.mean)};
}

struct PairedRuns {
    std::size_t dominance_violations = 0;
    double worst_excess = 0.0;
    std::size_t agreements = 0;
    double pruned_evaluations = 0.0;
    double full_evaluations = 0.0;
};

const PairedRuns& paired_runs() {
    static const PairedRuns runs = [] {
        PairedRuns p;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const auto sim = generate({ScenarioKind::gauss_mv, 400, 3}, seed);
            DetectorConfig c;
            c.seed = detection_seed(seed);
            const auto pruned = detect(sim.series, c);
            c.use_pruning = false;
            const auto full = detect(sim.series, c);
            bool dominated = true;
            for (std::size_t k = 1; k <= c.max_change_points; ++k) {
                const double excess = pruned.gof_curve.at(k) - full.gof_curve.at(k);
                p.worst_excess = std::max(p.worst_excess, excess);
                dominated = dominated && excess <= 0.0;
            }
            p.dominance_violations += !dominated;
            p.agreements += pruned.selected().change_points == full.selected().change_points;
            p.pruned_evaluations += static_cast<double>(pruned.evaluations);
            p.full_evaluations += static_cast<double>(full.evaluations);
        }
        return p;
    }();
    return runs;
}

Verdict pruning_soundness() {
    const auto& p = paired_runs();
    const bool ok = p.dominance_violations == 0 && p.agreements >= 90;
    return {ok, fmt("%zu/100 runs with pruned Gof above unpruned (max excess %.3g), "
                    "selected sets agree on %zu/100 (>= 90)",
                    p.dominance_violations, p.worst_excess, p.agreements)};
}

Verdict pruning_speedup() {
    const auto& p = paired_runs();
    const double ratio = p.pruned_evaluations / p.full_evaluations;
    return {ratio <= 0.8, fmt("evaluations pruned/unpruned = %.0f/%.0f = %.3f (<= 0.8)",
                              p.pruned_evaluations / 100.0, p.full_evaluations / 100.0, ratio)};
}

Verdict selection_rule() {
    bool examples = select_k({{10, 18, 19, 19.5, 19.6, 19.7}}) == 2 && select_k({{5, 5, 5}}) == 1 &&
                    select_k({{0, 100, 101, 102}}) == 2;
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::size_t> size(3, 30);
    std::exponential_distribution<double> jump(1.0);
    std::uniform_real_distribution<double> shift(-500.0, 500.0);
    std::uniform_int_distribution<int> exponent(-8, 8);
    std::size_t invariant = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t K = size(rng);
        std::vector<double> g(K);
        double level = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            level += jump(rng) * (k < 4 ? 8.0 * jump(rng) : 1.0);
            g[k] = level;
        }
        // Power-of-two scales and integer shifts keep the arithmetic exact.
        const double c = std::ldexp(1.0, exponent(rng));
        const double b = std::round(shift(rng));
        std::vector<double> moved(K);
        std::vector<double> scaled(K);
        for (std::size_t k = 0; k < K; ++k) {
            moved[k] = g[k] + b;
            scaled[k] = c * g[k];
        }
        const auto base = select_k({g});
        invariant += select_k({moved}) == base && select_k({scaled}) == base;
    }
    return {examples && invariant == 1000,
            fmt("examples %s, shift/scale invariant on %zu/1000 curves",
                examples ? "exact" : "WRONG", invariant)};
}

Verdict population_behaviour() {
    constexpr std::size_t n = 2000;
    double worst_same[2] = {0.0, 0.0};
    double least_shift[2] = {INFINITY, INFINITY};
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto x = cp3o::testing::gaussian_series(n, 1, 0.0, 1.0, 40 * seed + 1);
        const auto y = cp3o::testing::gaussian_series(n, 1, 0.0, 1.0, 40 * seed + 2);
        const auto z = cp3o::testing::gaussian_series(n, 1, 3.0, 1.0, 40 * seed + 3);
        const auto same = cp3o::testing::concat(x, y);
        const auto shifted = cp3o::testing::concat(x, z);
        for (int incomplete = 0; incomplete < 2; ++incomplete) {
            const double d0 = divergence(same.view(1, n), same.view(n + 1, 2 * n), 1.0, 29,
                                         incomplete != 0);
            const double d1 = divergence(shifted.view(1, n), shifted.view(n + 1, 2 * n), 1.0, 29,
                                         incomplete != 0);
            worst_same[incomplete] = std::max(worst_same[incomplete], std::abs(d0));
            least_shift[incomplete] = std::min(least_shift[incomplete], d1);
        }
    }
    const bool ok = worst_same[0] <= 0.05 && worst_same[1] <= 0.05 && least_shift[0] > 0.2 &&
                    least_shift[1] > 0.2;
    return {ok, fmt("n=m=2000, 20 seeds: max |same| %.4f complete / %.4f incomplete (<= 0.05), "
                    "min N(0,1)-vs-N(3,1) %.3f / %.3f (> 0.2)",
                    worst_same[0], worst_same[1], least_shift[0], least_shift[1])};
}

Verdict copula_oracles() {
    std::mt19937_64 rng(2800);
    std::vector<double> cu, cv, gu, gv;
    for (int i = 0; i < 10000; ++i) {
        const auto c = sample_clayton(copula_theta, rng);
        cu.push_back(c.u);
        cv.push_back(c.v);
        const auto g = sample_gumbel(copula_theta, rng);
        gu.push_back(g.u);
        gv.push_back(g.v);
    }
    const double clayton = cp3o::testing::kendall_tau(cu, cv);
    const double gumbel = cp3o::testing::kendall_tau(gu, gv);
    const auto r = run_benchmark({ScenarioKind::copula, 300, 3}, 100, DetectorConfig{}, 0, 1);
    const bool ok = std::abs(clayton - 0.583) <= 0.05 && std::abs(gumbel - 0.643) <= 0.05 &&
                    r.rand.mean >= 0.55;
    return {ok, fmt("Kendall tau Clayton %.3f (0.583 +- 0.05), Gumbel %.3f (0.643 +- 0.05); "
                    "copula T=300 Rand %.3f (>= 0.55), k_hat %.2f",
                    clayton, gumbel, r.rand.mean, r.k_hat.mean)};
}

Verdict bench_determinism() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / ("cp3o_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    auto run = [&](const char* threads, const std::string& name) {
        ::setenv("CP3O_THREADS", threads, 1);
        std::ostringstream out;
        std::ostringstream err;
        const int code = run_cli({"cp3o", "bench", "--scenario", "gauss-mv", "--replicates", "100",
                                  "--seed", "5", "--output", (dir / name).string()},
                                 out, err);
        if (code != 0) {
            throw std::runtime_error("bench exited with " + std::to_string(code) + ": " + err.str());
        }
        return read_text(dir / name);
    };
    const auto one = run("1", "one.json");
    const auto again = run("1", "again.json");
    const auto four = run("4", "four.json");
    ::unsetenv("CP3O_THREADS");
    fs::remove_all(dir);
    const bool ok = one == again && one == four;
    return {ok, fmt("bench reports of %zu bytes: repeat %s, CP3O_THREADS=1 vs 4 %s", one.size(),
                    one == again ? "identical" : "DIFFER", one == four ? "identical" : "DIFFER")};
}

} // namespace

int main() {
    report(1, "oracle equivalence", oracle_equivalence);
    report(2, "incomplete/complete coincidence", incomplete_coincidence);
    report(3, "gauss-mv small setting", table1_small);
    report(4, "mean-tail small setting", table2_small);
    report(5, "pruning soundness", pruning_soundness);
    report(6, "pruning speedup", pruning_speedup);
    report(7, "selection rule", selection_rule);
    report(8, "energy population behaviour", population_behaviour);
    report(9, "copula generator oracles", copula_oracles);
    report(10, "bench determinism", bench_determinism);
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
