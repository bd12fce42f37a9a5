#pragma once

#include "vivid/graph.hpp"
#include "vivid/scan.hpp"

#include <random>
#include <string>
#include <utility>
#include <vector>

namespace vivid::testing {

// One record per entry: {id, severity, ordered file path}.
struct Flow {
    std::string id;
    int severity = 3;
    std::vector<std::string> files;
};

ScanDocument make_doc(const std::vector<Flow>& flows, const std::string& app = "fixture",
                      const std::string& scan_id = "scan-1");

// One vulnerability per edge, severity 3; files used verbatim.
ScanDocument doc_from_edges(const std::vector<std::pair<std::string, std::string>>& edges);

// Graph with one vuln per edge under count weighting.
VdfGraph graph_from_edges(const std::vector<std::pair<std::string, std::string>>& edges);

// Graph where edge (from, to, multiplicity) carries `multiplicity` distinct
// vulnerabilities, so its count weight equals multiplicity.
VdfGraph weighted_graph(
    const std::vector<std::tuple<std::string, std::string, int>>& edges);

// Scan shaped like the WebGoat analysis: a 12-node island containing a
// 3-in/3-out hub, a 2-node island forming an equal-weight 2-cycle, and 8
// loop-isolated nodes.
ScanDocument webgoat_shaped_doc();

// Hub star (3 in, 3 out) plus a fan island that spreads out-degree over six
// distinct values; foi {hub, fan1, fan2, sink1, sink2} makes out-degree
// capture exactly 3 of 5 at k=5.
ScanDocument hub_fixture_doc();
std::vector<std::string> hub_fixture_foi();
std::string hub_fixture_hub();

// Random digraph on n nodes with edge probability p; one vuln per edge,
// weights 1..max_weight via vuln multiplicity.
ScanDocument random_doc(std::mt19937& rng, int n, double p, int max_weight = 1);

// Random strongly connected aperiodic digraph (Hamiltonian cycle plus
// chords); retries until aperiodic.
VdfGraph random_scc_graph(std::mt19937& rng, int n, double extra_p, int max_weight = 1);

// Chain covering all nodes plus random extra pairs up to `edges` distinct
// non-loop edges.
ScanDocument synthetic_large_doc(int nodes, int edges, unsigned seed = 20240901);

std::string padded_file(int index);

} // namespace vivid::testing
