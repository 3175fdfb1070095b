#pragma once

#include <cp3o/core.hpp>
#include <cp3o/simgen.hpp>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace cp3o {

struct ReplicateOutcome {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    double rand = 0.0;
    std::size_t k_hat = 0;
    std::vector<std::size_t> change_points;
    std::uint64_t evaluations = 0;
    double seconds = 0.0;
};

struct MeanSe {
    double mean = 0.0;
    // Sample standard deviation over sqrt(replicates).
    double se = 0.0;
};

MeanSe mean_and_se(const std::vector<double>& values);

struct BenchReport {
    ScenarioSpec scenario;
    std::size_t replicates = 0;
    std::uint64_t base_seed = 0;
    DetectorConfig config;
    MeanSe rand;
    MeanSe k_hat;
    MeanSe seconds;
    MeanSe evaluations;
    // Sorted by replicate index.
    std::vector<ReplicateOutcome> outcomes;
};

// Seed driving the detector's own randomness for a replicate; generation uses
// base_seed + index directly.
std::uint64_t detection_seed(std::uint64_t replicate_seed);

// Replicate i simulates with seed base_seed + i, detects and scores against
// the truth. threads == 0 means one worker. Throws std::invalid_argument when
// replicates < 2.
BenchReport run_benchmark(const ScenarioSpec& scenario, std::size_t replicates,
                          const DetectorConfig& config, std::uint64_t base_seed,
                          std::size_t threads = 1);

} // namespace cp3o
