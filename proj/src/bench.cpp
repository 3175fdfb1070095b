#include <cp3o/bench.hpp>

#include <cp3o/detector.hpp>
#include <cp3o/eval.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace cp3o {

MeanSe mean_and_se(const std::vector<double>& values) {
    if (values.empty()) {
        return {};
    }
    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    const double mean = sum / n;
    if (values.size() < 2) {
        return {mean, 0.0};
    }
    double ss = 0.0;
    for (double v : values) {
        ss += (v - mean) * (v - mean);
    }
    return {mean, std::sqrt(ss / (n - 1.0)) / std::sqrt(n)};
}

std::uint64_t detection_seed(std::uint64_t replicate_seed) {
    // splitmix64 finaliser
    std::uint64_t z = replicate_seed + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

BenchReport run_benchmark(const ScenarioSpec& scenario, std::size_t replicates,
                          const DetectorConfig& config, std::uint64_t base_seed,
                          std::size_t threads) {
    if (replicates < 2) {
        throw std::invalid_argument("benchmark needs at least two replicates");
    }
    std::vector<ReplicateOutcome> outcomes(replicates);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= replicates) {
                return;
            }
            try {
                const std::uint64_t seed = base_seed + i;
                const auto sim = generate(scenario, seed);
                DetectorConfig cfg = config;
                cfg.seed = detection_seed(seed);
                const auto result = detect(sim.series, cfg);
                auto& out = outcomes[i];
                out.index = i;
                out.seed = seed;
                out.k_hat = result.k_hat;
                out.change_points = result.selected().change_points;
                out.rand = adjusted_rand(result.selected(), sim.truth);
                out.evaluations = result.evaluations;
                out.seconds = result.elapsed_seconds;
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next.store(replicates);
                return;
            }
        }
    };

    const std::size_t workers = std::clamp<std::size_t>(threads, 1, replicates);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    BenchReport report;
    report.scenario = scenario;
    report.replicates = replicates;
    report.base_seed = base_seed;
    report.config = config;
    std::vector<double> rands;
    std::vector<double> khats;
    std::vector<double> secs;
    std::vector<double> evals;
    for (const auto& o : outcomes) {
        rands.push_back(o.rand);
        khats.push_back(static_cast<double>(o.k_hat));
        secs.push_back(o.seconds);
        evals.push_back(static_cast<double>(o.evaluations));
    }
    report.rand = mean_and_se(rands);
    report.k_hat = mean_and_se(khats);
    report.seconds = mean_and_se(secs);
    report.evaluations = mean_and_se(evals);
    report.outcomes = std::move(outcomes);
    return report;
}

} // namespace cp3o
