#include <cp3o/io.hpp>

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace cp3o {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

bool parse_number(std::string_view field, double& out) {
    field = trim(field);
    if (!field.empty() && field.front() == '+') {
        field.remove_prefix(1);
    }
    if (field.empty()) {
        return false;
    }
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
    return ec == std::errc{} && ptr == field.data() + field.size();
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::string shortest(double value) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

Json config_to_json(const DetectorConfig& c) {
    Json j;
    j["alpha"] = c.alpha;
    j["delta"] = c.delta;
    j["epsilon"] = c.epsilon;
    j["max_cps"] = c.max_change_points;
    j["use_pruning"] = c.use_pruning;
    j["use_incomplete"] = c.use_incomplete;
    j["seed"] = c.seed;
    return j;
}

Json mean_se_json(const MeanSe& m) {
    return Json{{"mean", m.mean}, {"se", m.se}};
}

bool is_index_array(const Json& j) {
    if (!j.is_array()) {
        return false;
    }
    for (const auto& v : j) {
        if (!v.is_number_integer()) {
            return false;
        }
    }
    return true;
}

} // namespace

TimeSeries parse_csv(std::string_view text) {
    std::vector<double> data;
    std::size_t dim = 0;
    std::size_t rows = 0;
    std::size_t line_no = 0;
    bool first = true;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            nl = text.size();
        }
        const auto line = trim(text.substr(pos, nl - pos));
        pos = nl + 1;
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto fields = split_fields(line);
        std::vector<double> values(fields.size());
        bool numeric = true;
        for (std::size_t i = 0; i < fields.size(); ++i) {
            numeric = numeric && parse_number(fields[i], values[i]);
        }
        if (!numeric) {
            if (first) {
                first = false;
                continue;
            }
            std::ostringstream msg;
            msg << "line " << line_no << ": non-numeric field";
            throw InputError(msg.str());
        }
        first = false;
        if (dim == 0) {
            dim = values.size();
        } else if (values.size() != dim) {
            std::ostringstream msg;
            msg << "line " << line_no << ": expected " << dim << " columns, found "
                << values.size();
            throw InputError(msg.str());
        }
        data.insert(data.end(), values.begin(), values.end());
        ++rows;
    }
    if (rows == 0) {
        throw InputError("no observations in input");
    }
    try {
        return TimeSeries(rows, dim, std::move(data));
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

TimeSeries read_csv(const std::filesystem::path& path) {
    return parse_csv(read_text(path));
}

std::string format_csv(const TimeSeries& series) {
    std::string out;
    for (std::size_t i = 0; i < series.length(); ++i) {
        const auto row = series.row(i);
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j > 0) {
                out += ',';
            }
            out += shortest(row[j]);
        }
        out += '\n';
    }
    return out;
}

Json result_to_json(const DetectionResult& result) {
    Json j;
    j["schema"] = result_schema;
    j["length"] = result.series_length;
    j["k_hat"] = result.k_hat;
    j["change_points"] = result.selected().change_points;
    j["gof"] = result.gof_curve.values;
    Json segs = Json::object();
    for (std::size_t k = 1; k <= result.best_segmentations.size(); ++k) {
        segs[std::to_string(k)] = result.best_segmentations[k - 1].change_points;
    }
    j["segmentations"] = std::move(segs);
    if (result.gamma_epsilon) {
        j["gamma_epsilon"] = *result.gamma_epsilon;
    } else {
        j["gamma_epsilon"] = nullptr;
    }
    j["elapsed_seconds"] = result.elapsed_seconds;
    j["config"] = config_to_json(result.config_echo);
    return j;
}

Json truth_to_json(const Segmentation& truth) {
    Json j;
    j["schema"] = truth_schema;
    j["length"] = truth.series_length;
    j["change_points"] = truth.change_points;
    return j;
}

Json bench_to_json(const BenchReport& report, bool include_timing) {
    Json j;
    j["schema"] = bench_schema;
    j["scenario"] = scenario_name(report.scenario.kind);
    j["length"] = report.scenario.length;
    if (report.scenario.kind == ScenarioKind::gauss_mv) {
        j["num_change_points"] = report.scenario.num_change_points;
    }
    j["replicates"] = report.replicates;
    j["base_seed"] = report.base_seed;
    j["config"] = config_to_json(report.config);
    j["rand"] = mean_se_json(report.rand);
    j["k_hat"] = mean_se_json(report.k_hat);
    j["evaluations"] = mean_se_json(report.evaluations);
    if (include_timing) {
        j["seconds"] = mean_se_json(report.seconds);
    }
    Json runs = Json::array();
    for (const auto& o : report.outcomes) {
        Json r;
        r["index"] = o.index;
        r["seed"] = o.seed;
        r["rand"] = o.rand;
        r["k_hat"] = o.k_hat;
        r["change_points"] = o.change_points;
        r["evaluations"] = o.evaluations;
        if (include_timing) {
            r["seconds"] = o.seconds;
        }
        runs.push_back(std::move(r));
    }
    j["replicate_results"] = std::move(runs);
    return j;
}

std::string check_truth_json(const Json& doc) {
    if (!doc.is_object()) {
        return "document is not an object";
    }
    if (!doc.contains("schema") || doc["schema"] != truth_schema) {
        return "schema must be \"cp3o-truth/1\"";
    }
    if (!doc.contains("length") || !doc["length"].is_number_unsigned()) {
        return "length must be a non-negative integer";
    }
    if (!doc.contains("change_points") || !is_index_array(doc["change_points"])) {
        return "change_points must be an integer array";
    }
    return {};
}

std::string check_result_json(const Json& doc) {
    if (!doc.is_object()) {
        return "document is not an object";
    }
    if (!doc.contains("schema") || doc["schema"] != result_schema) {
        return "schema must be \"cp3o/1\"";
    }
    for (const char* key : {"length", "k_hat"}) {
        if (!doc.contains(key) || !doc[key].is_number_unsigned()) {
            return std::string(key) + " must be a non-negative integer";
        }
    }
    if (!doc.contains("change_points") || !is_index_array(doc["change_points"])) {
        return "change_points must be an integer array";
    }
    if (!doc.contains("gof") || !doc["gof"].is_array()) {
        return "gof must be an array";
    }
    for (const auto& g : doc["gof"]) {
        if (!g.is_number()) {
            return "gof entries must be numbers";
        }
    }
    if (!doc.contains("segmentations") || !doc["segmentations"].is_object()) {
        return "segmentations must be an object";
    }
    if (doc["segmentations"].size() != doc["gof"].size()) {
        return "segmentations and gof disagree on K";
    }
    for (const auto& [key, value] : doc["segmentations"].items()) {
        std::size_t k = 0;
        const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), k);
        if (ec != std::errc{} || ptr != key.data() + key.size()) {
            return "segmentation key '" + key + "' is not a change count";
        }
        if (!is_index_array(value) || value.size() != k) {
            return "segmentation " + key + " must list exactly " + key + " change points";
        }
    }
    if (!doc.contains("gamma_epsilon") ||
        !(doc["gamma_epsilon"].is_null() || doc["gamma_epsilon"].is_number())) {
        return "gamma_epsilon must be a number or null";
    }
    if (!doc.contains("elapsed_seconds") || !doc["elapsed_seconds"].is_number()) {
        return "elapsed_seconds must be a number";
    }
    if (!doc.contains("config") || !doc["config"].is_object()) {
        return "config must be an object";
    }
    for (const char* key :
         {"alpha", "delta", "epsilon", "max_cps", "use_pruning", "use_incomplete", "seed"}) {
        if (!doc["config"].contains(key)) {
            return std::string("config.") + key + " missing";
        }
    }
    return {};
}

Segmentation segmentation_from_json(const Json& doc) {
    std::string problem;
    if (doc.is_object() && doc.contains("schema") && doc["schema"] == result_schema) {
        problem = check_result_json(doc);
    } else {
        problem = check_truth_json(doc);
    }
    if (!problem.empty()) {
        throw InputError(problem);
    }
    Segmentation seg{doc["change_points"].get<std::vector<std::size_t>>(),
                     doc["length"].get<std::size_t>()};
    try {
        seg.check();
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    return seg;
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Json read_json(const std::filesystem::path& path) {
    const auto text = read_text(path);
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("cannot write " + path.string());
    }
    out << text;
    if (!out) {
        throw InputError("failed writing " + path.string());
    }
}

} // namespace cp3o
