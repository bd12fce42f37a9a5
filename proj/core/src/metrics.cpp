#include "vivid/metrics.hpp"

#include <algorithm>

namespace vivid {

namespace {

MetricVector degree_metric(const VdfGraph& g, bool weighted, bool incoming) {
    MetricVector m;
    m.name = incoming ? "in_degree" : "out_degree";
    m.values.assign(g.nodes.size(), 0.0);
    for (const auto& e : g.edges) {
        if (e.from == e.to) continue;
        const int node = incoming ? e.to : e.from;
        m.values[node] += weighted ? g.edge_weight(e) : 1.0;
    }
    return m;
}

} // namespace

MetricVector in_degree(const VdfGraph& g, bool weighted) {
    return degree_metric(g, weighted, true);
}

MetricVector out_degree(const VdfGraph& g, bool weighted) {
    return degree_metric(g, weighted, false);
}

const std::vector<std::string>& canonical_metrics() {
    static const std::vector<std::string> names = {
        "in_degree",       "out_degree", "betweenness", "in_eigenvector",
        "out_eigenvector", "pagerank",   "cross_clique"};
    return names;
}

bool is_canonical_metric(const std::string& name) {
    const auto& names = canonical_metrics();
    return std::find(names.begin(), names.end(), name) != names.end();
}

} // namespace vivid
