#pragma once

#include "vivid/graph.hpp"

#include <string>
#include <vector>

namespace vivid {

enum class EntropyBand { low, moderate, high, very_high };

// Entropy of one vulnerability island. Band bounds are closed above:
// normalized <= 0.25 low, <= 0.5 moderate, <= 0.75 high, else very_high.
struct SegmentReport {
    std::vector<int> segment;       // node indices, sorted by file
    int edge_count = 0;
    double entropy_bits = 0.0;
    double max_entropy_bits = 0.0;  // log2(edge_count), uniform bound
    double normalized = 0.0;        // in [0, 1]
    EntropyBand band = EntropyBand::low;
};

struct CommunityPartition {
    std::vector<std::vector<int>> communities;  // node indices, sorted by file
    double modularity_q = 0.0;
    int walk_length = 4;
};

// H(v) = -sum p(u|v) log2 p(u|v) over out-edges excluding self-loops,
// p(u|v) = w(v->u) / total out-weight; 0 when no qualifying out-edges.
double node_entropy(const VdfGraph& g, int node);

// Entropy of the flow-weight distribution over the segment's edges.
SegmentReport segment_entropy(const VdfGraph& g, const std::vector<int>& segment);

EntropyBand entropy_band(double normalized);
const char* to_string(EntropyBand band);

// Agglomerative community detection by random-walk distance (walk
// probabilities from weighted out-distributions, dangling nodes uniform);
// returns the merge-tree cut maximizing modularity Q.
CommunityPartition walktrap_communities(const VdfGraph& g, int walk_length = 4);

// Q over the undirected weighted projection (self-loops dropped). Throws
// ValidationError when the input does not partition the nodes.
double modularity_q(const VdfGraph& g, const std::vector<std::vector<int>>& partition);

} // namespace vivid
