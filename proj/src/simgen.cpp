#include <cp3o/simgen.hpp>

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace cp3o {

namespace {

// Uniform on (0, 1).
double open_uniform(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double u = 0.0;
    while (u == 0.0) {
        u = unit(rng);
    }
    return u;
}

double standard_exponential(std::mt19937_64& rng) {
    return -std::log(open_uniform(rng));
}

std::vector<std::size_t> equal_spacing(std::size_t length, std::size_t segments) {
    std::vector<std::size_t> cps;
    for (std::size_t j = 1; j < segments; ++j) {
        cps.push_back(length * j / segments);
    }
    return cps;
}

void require(bool ok, const std::string& what) {
    if (!ok) {
        throw std::invalid_argument(what);
    }
}

} // namespace

std::string_view scenario_name(ScenarioKind kind) {
    switch (kind) {
    case ScenarioKind::gauss_mv:
        return "gauss-mv";
    case ScenarioKind::mean_tail:
        return "mean-tail";
    case ScenarioKind::copula:
        return "copula";
    }
    return "unknown";
}

std::optional<ScenarioKind> parse_scenario(std::string_view name) {
    for (auto kind : {ScenarioKind::gauss_mv, ScenarioKind::mean_tail, ScenarioKind::copula}) {
        if (scenario_name(kind) == name) {
            return kind;
        }
    }
    return std::nullopt;
}

double normal_quantile(double u) {
    constexpr double tiny = std::numeric_limits<double>::min();
    u = std::clamp(u, tiny, std::nextafter(1.0, 0.0));
    return boost::math::quantile(boost::math::normal(), u);
}

double sample_positive_stable(double a, std::mt19937_64& rng) {
    const double theta = std::numbers::pi * open_uniform(rng);
    const double w = standard_exponential(rng);
    const double left = std::sin(a * theta) / std::pow(std::sin(theta), 1.0 / a);
    const double right = std::pow(std::sin((1.0 - a) * theta) / w, (1.0 - a) / a);
    return left * right;
}

UniformPair sample_clayton(double theta, std::mt19937_64& rng) {
    std::gamma_distribution<double> frailty(1.0 / theta, 1.0);
    double v = 0.0;
    while (v == 0.0) {
        v = frailty(rng);
    }
    const double e1 = standard_exponential(rng);
    const double e2 = standard_exponential(rng);
    return {std::pow(1.0 + e1 / v, -1.0 / theta), std::pow(1.0 + e2 / v, -1.0 / theta)};
}

UniformPair sample_gumbel(double theta, std::mt19937_64& rng) {
    const double a = 1.0 / theta;
    const double v = sample_positive_stable(a, rng);
    const double e1 = standard_exponential(rng);
    const double e2 = standard_exponential(rng);
    return {std::exp(-std::pow(e1 / v, a)), std::exp(-std::pow(e2 / v, a))};
}

SimulatedSeries gen_gauss_mv(std::size_t length, std::size_t k, std::mt19937_64& rng) {
    std::ostringstream msg;
    msg << "gauss-mv needs (k+1)*" << gauss_mv_min_segment << " <= T; got k=" << k
        << ", T=" << length;
    require((k + 1) * gauss_mv_min_segment <= length, msg.str());

    std::uniform_real_distribution<double> mean_dist(-10.0, 10.0);
    std::uniform_real_distribution<double> var_dist(0.0, 5.0);
    std::vector<double> means;
    std::vector<double> sds;
    for (std::size_t j = 0; j <= k; ++j) {
        double mu = 0.0;
        double var = 0.0;
        do {
            mu = mean_dist(rng);
            var = 0.0;
            while (var == 0.0) {
                var = var_dist(rng);
            }
        } while (j > 0 && mu == means.back() && std::sqrt(var) == sds.back());
        means.push_back(mu);
        sds.push_back(std::sqrt(var));
    }

    auto cps = equal_spacing(length, k + 1);
    std::vector<double> data;
    data.reserve(length);
    std::size_t segment = 0;
    for (std::size_t i = 0; i < length; ++i) {
        if (segment < cps.size() && i >= cps[segment]) {
            ++segment;
        }
        std::normal_distribution<double> noise(means[segment], sds[segment]);
        data.push_back(noise(rng));
    }
    return {TimeSeries::univariate(std::move(data)), Segmentation{std::move(cps), length}};
}

SimulatedSeries gen_mean_tail(std::size_t length, std::mt19937_64& rng) {
    require(length >= 4 && length % 4 == 0, "mean-tail needs a positive length divisible by 4");
    std::normal_distribution<double> normal(0.0, 1.0);
    std::chi_squared_distribution<double> chi2(tail_dof);
    const std::size_t quarter = length / 4;
    std::vector<double> data;
    data.reserve(length);
    for (std::size_t i = 0; i < length; ++i) {
        switch (i / quarter) {
        case 0:
        case 2:
            data.push_back(normal(rng));
            break;
        case 1:
            data.push_back(3.0 + normal(rng));
            break;
        default:
            // Student t as a normal over sqrt(chi^2 / dof).
            data.push_back(normal(rng) / std::sqrt(chi2(rng) / tail_dof));
            break;
        }
    }
    return {TimeSeries::univariate(std::move(data)),
            Segmentation{{quarter, 2 * quarter, 3 * quarter}, length}};
}

SimulatedSeries gen_copula(std::size_t length, std::mt19937_64& rng) {
    require(length >= 3 && length % 3 == 0, "copula needs a positive length divisible by 3");
    const std::size_t third = length / 3;
    std::vector<double> data;
    data.reserve(2 * length);
    for (std::size_t i = 0; i < length; ++i) {
        UniformPair p{};
        switch (i / third) {
        case 0:
            p = sample_clayton(copula_theta, rng);
            break;
        case 1:
            p.u = open_uniform(rng);
            p.v = open_uniform(rng);
            break;
        default:
            p = sample_gumbel(copula_theta, rng);
            break;
        }
        data.push_back(normal_quantile(p.u));
        data.push_back(normal_quantile(p.v));
    }
    return {TimeSeries(length, 2, std::move(data)), Segmentation{{third, 2 * third}, length}};
}

SimulatedSeries generate(const ScenarioSpec& spec, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    switch (spec.kind) {
    case ScenarioKind::gauss_mv:
        return gen_gauss_mv(spec.length, spec.num_change_points, rng);
    case ScenarioKind::mean_tail:
        return gen_mean_tail(spec.length, rng);
    case ScenarioKind::copula:
        return gen_copula(spec.length, rng);
    }
    throw std::invalid_argument("unknown scenario");
}

} // namespace cp3o
