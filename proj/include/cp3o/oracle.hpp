#pragma once

#include <cp3o/core.hpp>
#include <cp3o/detector.hpp>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace cp3o {

struct ExhaustiveResult {
    double value = 0.0;
    Segmentation segmentation;
};

inline constexpr double exhaustive_budget = 1e7;

// Brute-force maximum of the summed complete-statistic divergences between
// adjacent segments over every k-change-point segmentation whose segments all
// hold at least min_segment observations. Ties go to the lexicographically
// smallest change-point vector. Throws std::length_error when C(T-1, k)
// exceeds exhaustive_budget and std::invalid_argument when no segmentation fits.
ExhaustiveResult exhaustive_gof(const TimeSeries& series, std::size_t k, double alpha,
                                std::size_t min_segment);

// Sum over adjacent segments of the complete-statistic divergence.
double segmentation_objective(const TimeSeries& series, const Segmentation& segmentation,
                              double alpha);

// Dynamic program whose state is the pair of the last two boundaries, so each
// transition sees the true preceding segment. O(K T^3) time and O(K T^2)
// memory; used to check the single back-pointer recursion of run_search.
// gof[k-1] and segmentations[k-1] describe the optimum with k change points.
struct ExactDpResult {
    std::vector<double> gof;
    std::vector<Segmentation> segmentations;
};
ExactDpResult exact_dynamic_program(const TimeSeries& series, std::size_t max_k, double alpha,
                                    std::size_t delta, bool use_incomplete);

struct OracleCase {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    std::size_t k = 1;
    TimeSeries series;
};

inline constexpr std::size_t oracle_min_segment = 3;

// Univariate piecewise-Gaussian series with T in [18, max_length] and
// k in {1, 2, 3}; case i is generated from seed + i.
std::vector<OracleCase> oracle_grid(std::size_t cases, std::size_t max_length, std::uint64_t seed);

struct OracleCheck {
    double dp_value = 0.0;
    double oracle_value = 0.0;
    Segmentation dp_segmentation;
    Segmentation oracle_segmentation;
    bool value_match = false;
    bool segmentation_match = false;
    bool passed() const { return value_match && segmentation_match; }
};

// run_search (complete statistic, no pruning, min segment 3) against
// exhaustive_gof. dp_offset perturbs the DP value for negative controls.
OracleCheck check_oracle_case(const OracleCase& c, double tolerance = 1e-10,
                              double dp_offset = 0.0);
// Same comparison for exact_dynamic_program.
OracleCheck check_exact_case(const OracleCase& c, double tolerance = 1e-10);

// Full pipeline with the complete statistic and no pruning.
DetectionResult complete_reference_detect(const TimeSeries& series, const DetectorConfig& config);

} // namespace cp3o
