#pragma once

#include <cp3o/core.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>

namespace cp3o {

enum class ScenarioKind { gauss_mv, mean_tail, copula };

std::string_view scenario_name(ScenarioKind kind);
std::optional<ScenarioKind> parse_scenario(std::string_view name);

struct ScenarioSpec {
    ScenarioKind kind = ScenarioKind::gauss_mv;
    std::size_t length = 400;
    // Only used by gauss-mv; the other scenarios have a fixed change count.
    std::size_t num_change_points = 3;
};

struct SimulatedSeries {
    TimeSeries series;
    Segmentation truth;
};

// Minimum segment length every gauss-mv segment must reach.
inline constexpr std::size_t gauss_mv_min_segment = 30;

// k+1 equally spaced Gaussian segments, mu ~ U(-10, 10), sigma^2 ~ U(0, 5).
SimulatedSeries gen_gauss_mv(std::size_t length, std::size_t k, std::mt19937_64& rng);

// N(0,1), N(3,1), N(0,1), t(2.01) in four equal segments. T % 4 == 0.
SimulatedSeries gen_mean_tail(std::size_t length, std::mt19937_64& rng);

// Bivariate standard-normal margins; Clayton(2.8), independence, Gumbel(2.8)
// copulas in three equal segments. T % 3 == 0.
SimulatedSeries gen_copula(std::size_t length, std::mt19937_64& rng);

SimulatedSeries generate(const ScenarioSpec& spec, std::uint64_t seed);

inline constexpr double copula_theta = 2.8;
inline constexpr double tail_dof = 2.01;

struct UniformPair {
    double u;
    double v;
};

// Marshall-Olkin frailty samplers.
UniformPair sample_clayton(double theta, std::mt19937_64& rng);
UniformPair sample_gumbel(double theta, std::mt19937_64& rng);

// Positive stable variate with Laplace transform exp(-s^a), 0 < a < 1 (Kanter).
double sample_positive_stable(double a, std::mt19937_64& rng);

// Standard normal quantile; u is clamped into the open unit interval.
double normal_quantile(double u);

} // namespace cp3o
