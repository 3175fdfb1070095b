#include <cp3o/detector.hpp>

#include <random>

namespace cp3o {

DetectionResult detect(const TimeSeries& series, const DetectorConfig& config) {
    const auto validated = validate_config(config, series);
    std::mt19937_64 rng(config.seed);
    auto search = run_search(series, validated, rng);

    DetectionResult result;
    result.series_length = series.length();
    result.k_hat = select_k(search.curve, config.biased_variance ? IncrementVariance::biased
                                                                  : IncrementVariance::unbiased);
    result.best_segmentations = std::move(search.segmentations);
    result.gof_curve = std::move(search.curve);
    if (search.threshold) {
        result.gamma_epsilon = search.threshold->gamma_epsilon;
    }
    result.elapsed_seconds = search.elapsed_seconds;
    result.evaluations = search.stats.evaluations;
    result.config_echo = config;
    return result;
}

} // namespace cp3o
