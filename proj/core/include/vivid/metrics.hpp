#pragma once

#include "vivid/graph.hpp"

#include <string>
#include <vector>

namespace vivid {

// Per-node values for one named metric, indexed by node index. All values
// finite; NaN forbidden.
struct MetricVector {
    std::string name;
    std::vector<double> values;
    bool higher_is_hotter = true;
};

MetricVector in_degree(const VdfGraph& g, bool weighted = true);
MetricVector out_degree(const VdfGraph& g, bool weighted = true);

// The per-node metrics in canonical (radar) order: in_degree, out_degree,
// betweenness, in_eigenvector, out_eigenvector, pagerank, cross_clique.
const std::vector<std::string>& canonical_metrics();

bool is_canonical_metric(const std::string& name);

} // namespace vivid
