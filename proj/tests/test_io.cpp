#include <cp3o/detector.hpp>
#include <cp3o/io.hpp>

#include <doctest.h>

#include <cmath>
#include <random>

using namespace cp3o;

TEST_CASE("parse_csv") {
    const auto s = parse_csv("x,y\n1,2\n3,4.5\n\n-1e-3,+7\n");
    CHECK(s.length() == 3);
    CHECK(s.dim() == 2);
    CHECK(s.row(1)[1] == 4.5);
    CHECK(s.row(2)[0] == -1e-3);
    CHECK(parse_csv("1\r\n2\r\n").length() == 2);
    CHECK_THROWS_AS(parse_csv("1,2\n3\n"), InputError);
    CHECK_THROWS_AS(parse_csv("1\nabc\n"), InputError);
    CHECK_THROWS_AS(parse_csv("1\nnan\n"), InputError);
    CHECK_THROWS_AS(parse_csv("1\ninf\n"), InputError);
    CHECK_THROWS_AS(parse_csv("header\n"), InputError);
    CHECK_THROWS_AS(parse_csv(""), InputError);
}

TEST_CASE("format_csv round-trips exactly") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g(0.0, 1e3);
    std::vector<double> v(300);
    for (auto& x : v) {
        x = g(rng);
    }
    const TimeSeries s(100, 3, v);
    CHECK(parse_csv(format_csv(s)) == s);
}

TEST_CASE("result JSON follows the schema") {
    std::vector<double> x(120);
    for (std::size_t t = 0; t < 120; ++t) {
        x[t] = t < 60 ? 0.1 * std::sin(static_cast<double>(t)) : 4.0;
    }
    DetectorConfig c;
    c.delta = 9;
    c.max_change_points = 4;
    const auto r = detect(TimeSeries::univariate(x), c);
    const auto j = result_to_json(r);
    CHECK(check_result_json(j).empty());
    CHECK(j["schema"] == "cp3o/1");
    CHECK(j["gof"].size() == 4);
    CHECK(j["segmentations"]["3"].size() == 3);
    CHECK(j["config"]["max_cps"] == 4);
    CHECK(segmentation_from_json(j) == r.selected());

    auto broken = j;
    broken["segmentations"]["2"] = {1};
    CHECK_FALSE(check_result_json(broken).empty());
    auto bad_key = j;
    bad_key["segmentations"].erase("4");
    bad_key["segmentations"]["four"] = {1, 2, 3, 4};
    CHECK_FALSE(check_result_json(bad_key).empty());
    auto no_schema = j;
    no_schema.erase("schema");
    CHECK_THROWS_AS(segmentation_from_json(no_schema), InputError);
}

TEST_CASE("truth JSON") {
    const Segmentation s{{100, 200}, 300};
    const auto j = truth_to_json(s);
    CHECK(check_truth_json(j).empty());
    CHECK(segmentation_from_json(j) == s);
    auto bad = j;
    bad["change_points"] = {200, 100};
    CHECK_THROWS_AS(segmentation_from_json(bad), InputError);
}
