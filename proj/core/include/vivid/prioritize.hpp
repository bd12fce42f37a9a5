#pragma once

#include "vivid/metrics.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vivid {

struct RankedRow {
    int rank = 0;       // dense rank, starts at 1
    std::string file;
    double value = 0.0;
};

// Rows sorted by descending value; ties share the same dense rank and are
// ordered lexicographically by file.
struct RankingTable {
    std::string metric_name;
    std::vector<RankedRow> rows;
};

struct CaptureResult {
    std::string metric_name;
    int k = 5;
    std::vector<std::string> files_of_interest;  // sorted, deduplicated
    std::vector<std::string> captured;           // subset with rank <= k
    double capture_fraction = 0.0;
    std::vector<std::string> missing;            // foi absent from the graph
};

// Named convex combination of min-max-normalized metrics.
struct PriorityProfile {
    std::string name;
    std::map<std::string, double> weights;  // metric name -> weight >= 0
};

RankingTable rank(const VdfGraph& g, const MetricVector& metric);

// Rank-based cutoff: ties at the boundary are all included.
CaptureResult capture_at_k(const RankingTable& table,
                           const std::vector<std::string>& foi, int k);

// score(v) = sum of weight_m * minmax_m(v); weights normalized to sum 1;
// constant metrics normalize to all-0. The resulting vector is named
// "priority:<profile name>".
MetricVector priority_vector(const VdfGraph& g,
                             const std::vector<MetricVector>& metrics,
                             const PriorityProfile& profile);
RankingTable priority_score(const VdfGraph& g,
                            const std::vector<MetricVector>& metrics,
                            const PriorityProfile& profile);

// Built-in profiles: "placement" (out_degree, betweenness, in_eigenvector,
// cross_clique at 1/4 each) and "sink-audit" (in_degree, pagerank,
// out_eigenvector at 1/3 each).
std::optional<PriorityProfile> builtin_profile(const std::string& name);

// JSON {name, weights:{metric: weight, ...}}; metric names must be canonical.
PriorityProfile parse_profile(std::string_view json_text);

// Newline-delimited normalized paths; lines starting with '#' are comments.
std::vector<std::string> parse_foi(std::string_view text);

} // namespace vivid
