#pragma once

#include "vivid/scan.hpp"

#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace vivid {

enum class Weighting { count, severity };

struct Node {
    int index = 0;
    std::string file;

    bool operator==(const Node&) const = default;
};

// Aggregated directed edge; at most one per ordered (from, to) pair.
struct EdgeRecord {
    int from = 0;
    int to = 0;
    double weight = 0.0;           // = |vuln_ids| under count weighting
    double severity_weight = 0.0;  // sum of mapped severities over vuln_ids
    std::set<std::string> vuln_ids;
};

// Directed, weighted, file-level graph aggregated from all flows of a scan.
// Immutable after build_graph; self-loops are retained in the edge list but
// excluded from degree and centrality computations.
struct VdfGraph {
    std::vector<Node> nodes;                  // indices contiguous from 0
    std::vector<EdgeRecord> edges;            // sorted by (from, to)
    std::vector<std::vector<int>> out_edges;  // edge indices per node
    std::vector<std::vector<int>> in_edges;   // edge indices per node
    Weighting weighting = Weighting::count;

    int node_count() const { return static_cast<int>(nodes.size()); }
    int edge_count() const { return static_cast<int>(edges.size()); }

    double edge_weight(const EdgeRecord& e) const {
        return weighting == Weighting::severity ? e.severity_weight : e.weight;
    }
    double edge_weight(int edge_index) const { return edge_weight(edges[edge_index]); }

    const std::string& file(int node) const { return nodes[node].file; }

    // -1 when the file is not a node of this graph.
    int index_of(const std::string& file) const {
        auto it = file_index.find(file);
        return it == file_index.end() ? -1 : it->second;
    }

    std::unordered_map<std::string, int> file_index;
};

struct DegreeProfile {
    int in = 0;
    int out = 0;
    int total = 0;
};

// Weakly connected components, ordered by descending size then by
// lexicographic smallest member file; members sorted by file.
struct IslandPartition {
    std::vector<std::vector<int>> segments;
    std::vector<Node> filtered_nodes;  // removed by the noise rule, if any
};

// Severity ordinal 0..5 mapped onto 0.0 .. 1.0 in steps of 0.2.
double severity_to_weight(int severity);

// Every consecutive step pair of every record contributes that record's id
// to the ordered file-pair edge; node indices follow first appearance.
VdfGraph build_graph(const ScanDocument& doc, Weighting weighting = Weighting::count);

// Removes nodes whose only incident edge is a self-loop plus all isolated
// nodes. Returns the reindexed graph and the removed nodes (sorted by file).
// Idempotent.
std::pair<VdfGraph, std::vector<Node>> apply_noise_filter(const VdfGraph& g);

IslandPartition islands(const VdfGraph& g);

// Unweighted counts of distinct in-/out-edges, self-loops excluded.
std::vector<DegreeProfile> degree_profile(const VdfGraph& g);

// Canonical JSON {nodes:[{id,file}], edges:[...]} in deterministic order.
std::string serialize_graph(const VdfGraph& g);

const char* to_string(Weighting weighting);
std::optional<Weighting> weighting_from_string(std::string_view name);

} // namespace vivid
