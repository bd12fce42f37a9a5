#include "support/fixtures.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace vivid::testing {

std::string padded_file(int index) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "f%04d.java", index);
    return buf;
}

ScanDocument make_doc(const std::vector<Flow>& flows, const std::string& app,
                      const std::string& scan_id) {
    ScanDocument doc;
    doc.app_name = app;
    doc.scan_id = scan_id;
    for (const auto& flow : flows) {
        VdfRecord rec;
        rec.id = flow.id;
        rec.severity = flow.severity;
        for (const auto& file : flow.files) rec.flow.push_back({file, "", std::nullopt});
        doc.records.push_back(std::move(rec));
    }
    return doc;
}

ScanDocument doc_from_edges(const std::vector<std::pair<std::string, std::string>>& edges) {
    std::vector<Flow> flows;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        flows.push_back({"E" + std::to_string(i), 3, {edges[i].first, edges[i].second}});
    }
    return make_doc(flows);
}

VdfGraph graph_from_edges(const std::vector<std::pair<std::string, std::string>>& edges) {
    return build_graph(doc_from_edges(edges));
}

VdfGraph weighted_graph(
    const std::vector<std::tuple<std::string, std::string, int>>& edges) {
    std::vector<Flow> flows;
    int next_id = 0;
    for (const auto& [from, to, multiplicity] : edges) {
        for (int i = 0; i < multiplicity; ++i) {
            flows.push_back({"E" + std::to_string(next_id++), 3, {from, to}});
        }
    }
    return build_graph(make_doc(flows));
}

ScanDocument webgoat_shaped_doc() {
    std::vector<Flow> flows;
    // 12-node island: hub.java with 3 in and 3 out, one outlet chained
    // through five more files.
    flows.push_back({"V01", 4, {"app/in1.java", "app/hub.java", "app/out1.java"}});
    flows.push_back({"V02", 3, {"app/in2.java", "app/hub.java", "app/out2.java"}});
    flows.push_back({"V03", 5,
                     {"app/in3.java", "app/hub.java", "app/out3.java", "app/s1.java",
                      "app/s2.java", "app/s3.java", "app/s4.java", "app/s5.java"}});
    // 2-node island: equal-weight 2-cycle (segment entropy exactly 1 bit).
    flows.push_back({"V04", 2, {"pair/t0.java", "pair/t1.java", "pair/t0.java"}});
    // 8 loop-isolated nodes removed by the noise filter.
    for (int i = 0; i < 8; ++i) {
        const std::string file = "loops/u" + std::to_string(i) + ".java";
        flows.push_back({"L" + std::to_string(i), 1, {file, file}});
    }
    return make_doc(flows, "webgoat-shaped", "wg-1");
}

ScanDocument hub_fixture_doc() {
    std::vector<std::pair<std::string, std::string>> edges = {
        // star island: hub has 3 in, 3 out, total degree 6
        {"star/x1.java", "star/hub.java"},
        {"star/x2.java", "star/hub.java"},
        {"star/x3.java", "star/hub.java"},
        {"star/hub.java", "star/y1.java"},
        {"star/hub.java", "star/y2.java"},
        {"star/hub.java", "star/y3.java"},
        // fan island: out-degrees 5, 4 and 2 create six distinct
        // out-degree values (5,4,3,2,1,0) across the graph
        {"fan/a1.java", "fan/b1.java"},
        {"fan/a1.java", "fan/b2.java"},
        {"fan/a1.java", "fan/b3.java"},
        {"fan/a1.java", "fan/b4.java"},
        {"fan/a1.java", "fan/b5.java"},
        {"fan/a2.java", "fan/b1.java"},
        {"fan/a2.java", "fan/b2.java"},
        {"fan/a2.java", "fan/b3.java"},
        {"fan/a2.java", "fan/b4.java"},
        {"fan/a3.java", "fan/b1.java"},
        {"fan/a3.java", "fan/b2.java"},
    };
    auto doc = doc_from_edges(edges);
    doc.app_name = "hub-fixture";
    doc.scan_id = "hub-1";
    return doc;
}

std::vector<std::string> hub_fixture_foi() {
    // out-degree dense ranks: a1 -> 1, a2 -> 2, hub -> 3, y1/y2 -> 6.
    return {"star/hub.java", "fan/a1.java", "fan/a2.java", "star/y1.java",
            "star/y2.java"};
}

std::string hub_fixture_hub() { return "star/hub.java"; }

ScanDocument random_doc(std::mt19937& rng, int n, double p, int max_weight) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<int> weight(1, max_weight);
    std::vector<Flow> flows;
    int next_id = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j || coin(rng) >= p) continue;
            const int w = weight(rng);
            for (int k = 0; k < w; ++k) {
                flows.push_back(
                    {"E" + std::to_string(next_id++), 3, {padded_file(i), padded_file(j)}});
            }
        }
    }
    if (flows.empty()) {
        flows.push_back({"E0", 3, {padded_file(0), padded_file(1 % std::max(n, 2))}});
    }
    return make_doc(flows);
}

namespace {

bool aperiodic(const VdfGraph& g) {
    const int n = g.node_count();
    std::vector<int> dist(n, -1);
    std::vector<int> queue{0};
    dist[0] = 0;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const int v = queue[qi];
        for (const int ei : g.out_edges[v]) {
            const int to = g.edges[ei].to;
            if (to != v && dist[to] < 0) {
                dist[to] = dist[v] + 1;
                queue.push_back(to);
            }
        }
    }
    int gcd = 0;
    for (const auto& e : g.edges) {
        if (e.from == e.to) continue;
        const int diff = std::abs(dist[e.from] + 1 - dist[e.to]);
        gcd = std::gcd(gcd, diff);
    }
    return gcd == 1;
}

} // namespace

VdfGraph random_scc_graph(std::mt19937& rng, int n, double extra_p, int max_weight) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<int> weight(1, max_weight);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<int> cycle(n);
        for (int i = 0; i < n; ++i) cycle[i] = i;
        std::shuffle(cycle.begin(), cycle.end(), rng);

        std::set<std::pair<int, int>> pairs;
        for (int i = 0; i < n; ++i) pairs.insert({cycle[i], cycle[(i + 1) % n]});
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i != j && coin(rng) < extra_p) pairs.insert({i, j});
            }
        }

        std::vector<Flow> flows;
        int next_id = 0;
        for (const auto& [from, to] : pairs) {
            const int w = weight(rng);
            for (int k = 0; k < w; ++k) {
                flows.push_back({"E" + std::to_string(next_id++), 3,
                                 {padded_file(from), padded_file(to)}});
            }
        }
        VdfGraph g = build_graph(make_doc(flows));
        if (g.node_count() == n && aperiodic(g)) return g;
    }
    throw std::runtime_error("random_scc_graph failed to produce an aperiodic graph");
}

ScanDocument synthetic_large_doc(int nodes, int edges, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> pick(0, nodes - 1);
    std::uniform_int_distribution<int> sev(0, 5);

    std::set<std::pair<int, int>> pairs;
    for (int i = 0; i + 1 < nodes; ++i) pairs.insert({i, i + 1});
    while (static_cast<int>(pairs.size()) < edges) {
        const int from = pick(rng);
        const int to = pick(rng);
        if (from != to) pairs.insert({from, to});
    }

    std::vector<Flow> flows;
    int next_id = 0;
    for (const auto& [from, to] : pairs) {
        char id[24];
        std::snprintf(id, sizeof(id), "E%06d", next_id++);
        flows.push_back({id, sev(rng), {padded_file(from), padded_file(to)}});
    }
    return make_doc(flows, "synthetic", "large-1");
}

} // namespace vivid::testing
