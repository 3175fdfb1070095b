#pragma once

#include <cp3o/bench.hpp>
#include <cp3o/core.hpp>
#include <cp3o/detector.hpp>

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cp3o {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view result_schema = "cp3o/1";
inline constexpr std::string_view truth_schema = "cp3o-truth/1";
inline constexpr std::string_view bench_schema = "cp3o-bench/1";

// Malformed or unreadable input.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Comma-separated, one row per time step. A first row that does not parse as
// numbers is taken as a header.
TimeSeries parse_csv(std::string_view text);
TimeSeries read_csv(const std::filesystem::path& path);
std::string format_csv(const TimeSeries& series);

Json result_to_json(const DetectionResult& result);
Json truth_to_json(const Segmentation& truth);
// Timing fields vary run to run and are only emitted when asked for.
Json bench_to_json(const BenchReport& report, bool include_timing);

// Accepts a truth document or a detection result (its selected change points).
Segmentation segmentation_from_json(const Json& doc);

// Structural checks against the published schemas; returns an empty string
// when valid, otherwise the first problem found.
std::string check_result_json(const Json& doc);
std::string check_truth_json(const Json& doc);

Json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

} // namespace cp3o
