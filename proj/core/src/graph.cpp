#include "vivid/graph.hpp"

#include "vivid/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace vivid {

double severity_to_weight(int severity) {
    static constexpr double scale[6] = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
    if (severity < 0 || severity > 5) {
        throw ValidationError("severity " + std::to_string(severity) + " outside 0-5");
    }
    return scale[severity];
}

namespace {

void build_adjacency(VdfGraph& g) {
    g.out_edges.assign(g.nodes.size(), {});
    g.in_edges.assign(g.nodes.size(), {});
    for (int ei = 0; ei < g.edge_count(); ++ei) {
        g.out_edges[g.edges[ei].from].push_back(ei);
        g.in_edges[g.edges[ei].to].push_back(ei);
    }
    g.file_index.clear();
    for (const auto& node : g.nodes) g.file_index.emplace(node.file, node.index);
}

} // namespace

VdfGraph build_graph(const ScanDocument& doc, Weighting weighting) {
    VdfGraph g;
    g.weighting = weighting;

    std::unordered_map<std::string, int> index;
    auto intern = [&](const std::string& file) {
        auto it = index.find(file);
        if (it != index.end()) return it->second;
        const int idx = static_cast<int>(g.nodes.size());
        index.emplace(file, idx);
        g.nodes.push_back({idx, file});
        return idx;
    };

    std::map<std::pair<int, int>, std::set<std::string>> pair_vulns;
    std::unordered_map<std::string, int> severity_of;
    for (const auto& rec : doc.records) {
        severity_of.emplace(rec.id, rec.severity);
        for (const auto& step : rec.flow) intern(step.file);
        for (std::size_t i = 0; i + 1 < rec.flow.size(); ++i) {
            const int from = index.at(rec.flow[i].file);
            const int to = index.at(rec.flow[i + 1].file);
            pair_vulns[{from, to}].insert(rec.id);
        }
    }

    for (auto& [pair, ids] : pair_vulns) {
        EdgeRecord e;
        e.from = pair.first;
        e.to = pair.second;
        e.weight = static_cast<double>(ids.size());
        for (const auto& id : ids) e.severity_weight += severity_to_weight(severity_of.at(id));
        e.vuln_ids = std::move(ids);
        g.edges.push_back(std::move(e));
    }
    build_adjacency(g);
    return g;
}

std::pair<VdfGraph, std::vector<Node>> apply_noise_filter(const VdfGraph& g) {
    std::vector<bool> keep(g.nodes.size(), false);
    std::vector<Node> removed;
    for (const auto& node : g.nodes) {
        const auto& out = g.out_edges[node.index];
        const auto& in = g.in_edges[node.index];
        const bool isolated = out.empty() && in.empty();
        const bool loop_only = out.size() == 1 && in.size() == 1 && out[0] == in[0];
        if (isolated || loop_only) {
            removed.push_back(node);
        } else {
            keep[node.index] = true;
        }
    }
    std::sort(removed.begin(), removed.end(),
              [](const Node& a, const Node& b) { return a.file < b.file; });

    VdfGraph filtered;
    filtered.weighting = g.weighting;
    std::vector<int> remap(g.nodes.size(), -1);
    for (const auto& node : g.nodes) {
        if (!keep[node.index]) continue;
        remap[node.index] = static_cast<int>(filtered.nodes.size());
        filtered.nodes.push_back({remap[node.index], node.file});
    }
    for (const auto& e : g.edges) {
        if (!keep[e.from] || !keep[e.to]) continue;
        EdgeRecord copy = e;
        copy.from = remap[e.from];
        copy.to = remap[e.to];
        filtered.edges.push_back(std::move(copy));
    }
    build_adjacency(filtered);
    return {std::move(filtered), std::move(removed)};
}

IslandPartition islands(const VdfGraph& g) {
    const int n = g.node_count();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& e : g.edges) {
        const int a = find(e.from);
        const int b = find(e.to);
        if (a != b) parent[a] = b;
    }

    std::unordered_map<int, std::vector<int>> groups;
    for (int v = 0; v < n; ++v) groups[find(v)].push_back(v);

    IslandPartition out;
    for (auto& [root, members] : groups) {
        std::sort(members.begin(), members.end(), [&](int a, int b) {
            return g.nodes[a].file < g.nodes[b].file;
        });
        out.segments.push_back(std::move(members));
    }
    std::sort(out.segments.begin(), out.segments.end(),
              [&](const std::vector<int>& a, const std::vector<int>& b) {
                  if (a.size() != b.size()) return a.size() > b.size();
                  return g.nodes[a.front()].file < g.nodes[b.front()].file;
              });
    return out;
}

std::vector<DegreeProfile> degree_profile(const VdfGraph& g) {
    std::vector<DegreeProfile> out(g.nodes.size());
    for (const auto& e : g.edges) {
        if (e.from == e.to) continue;  // loops excluded from degrees
        out[e.from].out += 1;
        out[e.to].in += 1;
    }
    for (auto& d : out) d.total = d.in + d.out;
    return out;
}

std::string serialize_graph(const VdfGraph& g) {
    nlohmann::ordered_json j;
    j["nodes"] = nlohmann::ordered_json::array();
    for (const auto& node : g.nodes) {
        j["nodes"].push_back({{"id", node.index}, {"file", node.file}});
    }
    j["edges"] = nlohmann::ordered_json::array();
    for (const auto& e : g.edges) {
        nlohmann::ordered_json edge;
        edge["from"] = e.from;
        edge["to"] = e.to;
        edge["weight"] = e.weight;
        edge["severity_weight"] = e.severity_weight;
        edge["vuln_ids"] = std::vector<std::string>(e.vuln_ids.begin(), e.vuln_ids.end());
        j["edges"].push_back(std::move(edge));
    }
    return j.dump(2) + "\n";
}

const char* to_string(Weighting weighting) {
    return weighting == Weighting::count ? "count" : "severity";
}

std::optional<Weighting> weighting_from_string(std::string_view name) {
    if (name == "count") return Weighting::count;
    if (name == "severity") return Weighting::severity;
    return std::nullopt;
}

} // namespace vivid
