#pragma once

#include "vivid/graph.hpp"
#include "vivid/metrics.hpp"
#include "vivid/prioritize.hpp"
#include "vivid/structure.hpp"

#include <string>
#include <vector>

namespace vivid {

struct GraphSummary {
    int node_count = 0;      // built graph, before the noise filter
    int edge_count = 0;
    int filtered_count = 0;  // nodes removed by the noise filter
    std::vector<int> island_sizes;  // descending
};

// Aggregated analysis results for one scan. Node indices in metrics,
// segments and communities refer to `files`.
struct AnalysisReport {
    std::string app_name;
    std::string scan_id;
    std::vector<std::string> files;  // analyzed (filtered) graph, by index
    GraphSummary graph_summary;
    std::vector<MetricVector> metrics;
    std::vector<SegmentReport> segments;
    CommunityPartition communities;
    std::vector<RankingTable> rankings;
    std::vector<CaptureResult> captures;
};

// Throws ValidationError when the report is internally inconsistent
// (ranking without its metric, island sizes not matching segments, ...).
void validate_report(const AnalysisReport& r);

// GraphML: directed graph, node attribute `file` plus one numeric attribute
// per metric, edge attributes weight/severity_weight/vuln_count.
std::string export_graphml(const VdfGraph& g, const std::vector<MetricVector>& metrics);

// DOT digraph with node sizes scaled affinely from `size_by` into
// [0.5, 3.0] and edge pen widths from weight into [1.0, 5.0]; constant
// inputs degrade to the scale floor.
std::string export_dot(const VdfGraph& g, const std::vector<MetricVector>& metrics,
                       const std::string& size_by);

// Canonical JSON, stable key order, numbers at 12 significant digits;
// byte-identical across runs for identical inputs.
std::string export_report_json(const AnalysisReport& r);

// Header "file,<metric>,..."; one row per file of interest; cells carry the
// file's dense rank under each metric (empty when absent from the graph).
std::string export_radar_csv(const std::vector<RankingTable>& rankings,
                             const std::vector<std::string>& foi);

} // namespace vivid
