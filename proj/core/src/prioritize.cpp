#include "vivid/prioritize.hpp"

#include "vivid/errors.hpp"
#include "vivid/scan.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace vivid {

RankingTable rank(const VdfGraph& g, const MetricVector& metric) {
    if (metric.values.size() != g.nodes.size()) {
        throw ValidationError("metric '" + metric.name + "' covers " +
                              std::to_string(metric.values.size()) + " of " +
                              std::to_string(g.nodes.size()) + " nodes");
    }
    for (const double v : metric.values) {
        if (!std::isfinite(v)) {
            throw ValidationError("metric '" + metric.name + "' contains a non-finite value");
        }
    }

    std::vector<int> order(g.nodes.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (metric.values[a] != metric.values[b]) {
            return metric.values[a] > metric.values[b];
        }
        return g.nodes[a].file < g.nodes[b].file;
    });

    RankingTable table;
    table.metric_name = metric.name;
    table.rows.reserve(order.size());
    int dense_rank = 0;
    double previous = 0.0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const double value = metric.values[order[i]];
        if (i == 0 || value != previous) {
            ++dense_rank;
            previous = value;
        }
        table.rows.push_back({dense_rank, g.nodes[order[i]].file, value});
    }
    return table;
}

CaptureResult capture_at_k(const RankingTable& table,
                           const std::vector<std::string>& foi, int k) {
    if (k < 1) throw ValidationError("capture k must be >= 1");
    if (foi.empty()) throw ValidationError("files-of-interest list is empty");

    CaptureResult result;
    result.metric_name = table.metric_name;
    result.k = k;
    std::set<std::string> wanted(foi.begin(), foi.end());
    result.files_of_interest.assign(wanted.begin(), wanted.end());

    std::unordered_map<std::string, int> rank_of;
    for (const auto& row : table.rows) rank_of.emplace(row.file, row.rank);

    for (const auto& file : result.files_of_interest) {
        auto it = rank_of.find(file);
        if (it == rank_of.end()) {
            result.missing.push_back(file);
        } else if (it->second <= k) {
            result.captured.push_back(file);
        }
    }
    result.capture_fraction =
        static_cast<double>(result.captured.size()) / result.files_of_interest.size();
    return result;
}

MetricVector priority_vector(const VdfGraph& g,
                             const std::vector<MetricVector>& metrics,
                             const PriorityProfile& profile) {
    if (profile.weights.empty()) {
        throw ValidationError("profile '" + profile.name + "' has no weights");
    }
    double weight_sum = 0.0;
    for (const auto& [name, weight] : profile.weights) {
        if (weight < 0.0) {
            throw ValidationError("profile '" + profile.name + "': negative weight for '" +
                                  name + "'");
        }
        weight_sum += weight;
    }
    if (weight_sum <= 0.0) {
        throw ValidationError("profile '" + profile.name + "' needs a positive weight");
    }

    MetricVector score;
    score.name = "priority:" + profile.name;
    score.values.assign(g.nodes.size(), 0.0);
    for (const auto& [name, weight] : profile.weights) {
        const auto it = std::find_if(metrics.begin(), metrics.end(),
                                     [&](const MetricVector& m) { return m.name == name; });
        if (it == metrics.end()) {
            throw ValidationError("profile '" + profile.name +
                                  "' references missing metric '" + name + "'");
        }
        if (it->values.empty()) continue;
        const auto [lo_it, hi_it] = std::minmax_element(it->values.begin(), it->values.end());
        const double lo = *lo_it;
        const double span = *hi_it - lo;
        if (span <= 0.0) continue;  // constant metric normalizes to all-0
        for (std::size_t v = 0; v < it->values.size(); ++v) {
            score.values[v] += weight / weight_sum * (it->values[v] - lo) / span;
        }
    }
    return score;
}

RankingTable priority_score(const VdfGraph& g,
                            const std::vector<MetricVector>& metrics,
                            const PriorityProfile& profile) {
    return rank(g, priority_vector(g, metrics, profile));
}

std::optional<PriorityProfile> builtin_profile(const std::string& name) {
    if (name == "placement") {
        return PriorityProfile{"placement",
                               {{"out_degree", 0.25},
                                {"betweenness", 0.25},
                                {"in_eigenvector", 0.25},
                                {"cross_clique", 0.25}}};
    }
    if (name == "sink-audit") {
        return PriorityProfile{"sink-audit",
                               {{"in_degree", 1.0 / 3.0},
                                {"pagerank", 1.0 / 3.0},
                                {"out_eigenvector", 1.0 / 3.0}}};
    }
    return std::nullopt;
}

PriorityProfile parse_profile(std::string_view json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid profile JSON: ") + e.what(), e.byte);
    }
    if (!j.is_object() || !j.contains("name") || !j["name"].is_string() ||
        !j.contains("weights") || !j["weights"].is_object()) {
        throw ParseError("profile must be an object {name, weights:{metric: weight}}");
    }
    PriorityProfile profile;
    profile.name = j["name"].get<std::string>();
    for (const auto& [metric, weight] : j["weights"].items()) {
        if (!is_canonical_metric(metric)) {
            throw ValidationError("profile '" + profile.name + "' names unknown metric '" +
                                  metric + "'");
        }
        if (!weight.is_number()) {
            throw ParseError("profile weight for '" + metric + "' must be a number");
        }
        profile.weights[metric] = weight.get<double>();
    }
    if (profile.weights.empty()) {
        throw ValidationError("profile '" + profile.name + "' has no weights");
    }
    return profile;
}

std::vector<std::string> parse_foi(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::set<std::string> unique;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        const auto end = line.find_last_not_of(" \t");
        std::string trimmed = line.substr(start, end - start + 1);
        if (trimmed.front() == '#') continue;
        unique.insert(normalize_path(trimmed));
    }
    return {unique.begin(), unique.end()};
}

} // namespace vivid
