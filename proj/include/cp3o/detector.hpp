#pragma once

#include <cp3o/core.hpp>
#include <cp3o/search.hpp>
#include <cp3o/selection.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace cp3o {

struct DetectionResult {
    std::size_t k_hat = 0;
    std::size_t series_length = 0;
    // best_segmentations[k-1] has exactly k change points.
    std::vector<Segmentation> best_segmentations;
    GofCurve gof_curve;
    std::optional<double> gamma_epsilon;
    double elapsed_seconds = 0.0;
    std::uint64_t evaluations = 0;
    DetectorConfig config_echo;

    const Segmentation& selected() const { return best_segmentations.at(k_hat - 1); }
};

// validate_config -> estimate_gamma (when pruning) -> run_search -> select_k.
// Throws ConfigError for infeasible settings.
DetectionResult detect(const TimeSeries& series, const DetectorConfig& config);

} // namespace cp3o
