#include "vivid/structure.hpp"

#include "vivid/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <unordered_set>

namespace vivid {

namespace {

double entropy_bits_of(const std::vector<double>& weights) {
    double total = 0.0;
    for (const double w : weights) total += w;
    if (total <= 0.0) return 0.0;
    double h = 0.0;
    for (const double w : weights) {
        if (w <= 0.0) continue;  // 0 log 0 = 0
        const double p = w / total;
        h -= p * std::log2(p);
    }
    return h;
}

} // namespace

double node_entropy(const VdfGraph& g, int node) {
    std::vector<double> weights;
    for (const int ei : g.out_edges[node]) {
        const auto& e = g.edges[ei];
        if (e.from == e.to) continue;
        weights.push_back(g.edge_weight(e));
    }
    return entropy_bits_of(weights);
}

EntropyBand entropy_band(double normalized) {
    if (normalized <= 0.25) return EntropyBand::low;
    if (normalized <= 0.5) return EntropyBand::moderate;
    if (normalized <= 0.75) return EntropyBand::high;
    return EntropyBand::very_high;
}

const char* to_string(EntropyBand band) {
    switch (band) {
        case EntropyBand::low: return "low";
        case EntropyBand::moderate: return "moderate";
        case EntropyBand::high: return "high";
        default: return "very_high";
    }
}

SegmentReport segment_entropy(const VdfGraph& g, const std::vector<int>& segment) {
    SegmentReport report;
    report.segment = segment;
    std::sort(report.segment.begin(), report.segment.end(), [&](int a, int b) {
        return g.nodes[a].file < g.nodes[b].file;
    });

    std::unordered_set<int> members(segment.begin(), segment.end());
    std::vector<double> weights;
    for (const auto& e : g.edges) {
        if (members.count(e.from) && members.count(e.to)) {
            weights.push_back(g.edge_weight(e));
        }
    }
    report.edge_count = static_cast<int>(weights.size());
    report.entropy_bits = entropy_bits_of(weights);
    report.max_entropy_bits = weights.size() > 1 ? std::log2(double(weights.size())) : 0.0;
    report.normalized = report.max_entropy_bits > 0.0
                            ? report.entropy_bits / report.max_entropy_bits
                            : 0.0;
    report.band = entropy_band(report.normalized);
    return report;
}

namespace {

// Undirected weighted projection totals, self-loops dropped.
struct Projection {
    std::vector<double> degree;       // weighted degree per node
    double two_w = 0.0;               // sum of degrees = 2 * total weight
};

Projection project(const VdfGraph& g) {
    Projection p;
    p.degree.assign(g.nodes.size(), 0.0);
    for (const auto& e : g.edges) {
        if (e.from == e.to) continue;
        const double w = g.edge_weight(e);
        p.degree[e.from] += w;
        p.degree[e.to] += w;
        p.two_w += 2.0 * w;
    }
    return p;
}

} // namespace

double modularity_q(const VdfGraph& g, const std::vector<std::vector<int>>& partition) {
    const int n = g.node_count();
    std::vector<int> community(n, -1);
    int covered = 0;
    for (std::size_t c = 0; c < partition.size(); ++c) {
        for (const int v : partition[c]) {
            if (v < 0 || v >= n) {
                throw ValidationError("partition names node index " + std::to_string(v) +
                                      " outside the graph");
            }
            if (community[v] != -1) {
                throw ValidationError("node '" + g.nodes[v].file +
                                      "' appears in more than one community");
            }
            community[v] = static_cast<int>(c);
            ++covered;
        }
    }
    if (covered != n) {
        throw ValidationError("partition covers " + std::to_string(covered) + " of " +
                              std::to_string(n) + " nodes");
    }

    const Projection p = project(g);
    if (p.two_w <= 0.0) return 0.0;

    std::vector<double> internal(partition.size(), 0.0);
    std::vector<double> total(partition.size(), 0.0);
    for (const auto& e : g.edges) {
        if (e.from == e.to) continue;
        if (community[e.from] == community[e.to]) {
            internal[community[e.from]] += 2.0 * g.edge_weight(e);
        }
    }
    for (int v = 0; v < n; ++v) total[community[v]] += p.degree[v];

    double q = 0.0;
    for (std::size_t c = 0; c < partition.size(); ++c) {
        q += internal[c] / p.two_w - (total[c] / p.two_w) * (total[c] / p.two_w);
    }
    return q;
}

namespace {

// One agglomerative community during the walktrap merge phase.
struct Community {
    std::vector<int> members;
    std::vector<double> walk;          // mean t-step visit distribution
    std::map<int, double> between;     // adjacent community -> undirected weight
    double internal = 0.0;             // 2 * internal undirected weight
    double total_degree = 0.0;
    int min_file_node = 0;             // lexicographic smallest member file
    bool alive = false;
};

struct MergeCandidate {
    double dsigma;
    std::string file_a, file_b;        // tie order
    int a, b;

    bool operator>(const MergeCandidate& other) const {
        if (dsigma != other.dsigma) return dsigma > other.dsigma;
        if (file_a != other.file_a) return file_a > other.file_a;
        return file_b > other.file_b;
    }
};

// t-step visit distributions: row v of P^t where P uses weighted
// out-distributions (self-loops dropped) and dangling rows are uniform.
std::vector<std::vector<double>> walk_distributions(const VdfGraph& g, int t) {
    const int n = g.node_count();
    std::vector<double> out_weight(n, 0.0);
    for (const auto& e : g.edges) {
        if (e.from != e.to) out_weight[e.from] += g.edge_weight(e);
    }

    std::vector<std::vector<double>> rows(n);
    std::vector<double> next(n);
    for (int v = 0; v < n; ++v) {
        std::vector<double> row(n, 0.0);
        row[v] = 1.0;
        for (int step = 0; step < t; ++step) {
            std::fill(next.begin(), next.end(), 0.0);
            double dangling = 0.0;
            for (int u = 0; u < n; ++u) {
                if (row[u] == 0.0) continue;
                if (out_weight[u] <= 0.0) {
                    dangling += row[u];
                }
            }
            if (dangling > 0.0) {
                const double share = dangling / n;
                for (int w = 0; w < n; ++w) next[w] += share;
            }
            for (const auto& e : g.edges) {
                if (e.from == e.to || out_weight[e.from] <= 0.0) continue;
                if (row[e.from] == 0.0) continue;
                next[e.to] += row[e.from] * g.edge_weight(e) / out_weight[e.from];
            }
            row.swap(next);
        }
        rows[v] = std::move(row);
    }
    return rows;
}

} // namespace

CommunityPartition walktrap_communities(const VdfGraph& g, int walk_length) {
    if (walk_length < 1) throw ValidationError("walk length must be >= 1");
    const int n = g.node_count();
    CommunityPartition result;
    result.walk_length = walk_length;
    if (n == 0) return result;

    const Projection proj = project(g);
    auto rows = walk_distributions(g, walk_length);

    // Normalization degrees for the walk distance; zero-degree nodes
    // (loop-only or isolated) are clamped to 1 and never merge anyway.
    std::vector<double> dnorm(n);
    for (int v = 0; v < n; ++v) dnorm[v] = proj.degree[v] > 0.0 ? proj.degree[v] : 1.0;

    std::vector<Community> comms;
    comms.reserve(2 * n);
    for (int v = 0; v < n; ++v) {
        Community c;
        c.members = {v};
        c.walk = std::move(rows[v]);
        c.total_degree = proj.degree[v];
        c.min_file_node = v;
        c.alive = true;
        comms.push_back(std::move(c));
    }
    for (const auto& e : g.edges) {
        if (e.from == e.to) continue;
        const double w = g.edge_weight(e);
        comms[e.from].between[e.to] += w;
        comms[e.to].between[e.from] += w;
    }

    auto file_of = [&](int c) { return g.nodes[comms[c].min_file_node].file; };

    auto dsigma = [&](int a, int b) {
        const auto& ca = comms[a];
        const auto& cb = comms[b];
        double r2 = 0.0;
        for (int k = 0; k < n; ++k) {
            const double d = ca.walk[k] - cb.walk[k];
            r2 += d * d / dnorm[k];
        }
        const double na = static_cast<double>(ca.members.size());
        const double nb = static_cast<double>(cb.members.size());
        return na * nb / (na + nb) * r2 / n;
    };

    std::priority_queue<MergeCandidate, std::vector<MergeCandidate>,
                        std::greater<MergeCandidate>>
        heap;
    auto push_candidate = [&](int a, int b) {
        if (file_of(a) > file_of(b)) std::swap(a, b);
        heap.push({dsigma(a, b), file_of(a), file_of(b), a, b});
    };
    for (int v = 0; v < n; ++v) {
        for (const auto& [u, w] : comms[v].between) {
            if (v < u) push_candidate(v, u);
        }
    }

    // Merge states: Q is tracked incrementally to pick the best cut, then
    // recomputed exactly on the chosen partition.
    const double two_w = proj.two_w;
    double q = 0.0;
    if (two_w > 0.0) {
        for (int v = 0; v < n; ++v) {
            const double t = proj.degree[v] / two_w;
            q -= t * t;
        }
    }
    double best_q = q;
    int best_state = 0;
    std::vector<std::pair<int, int>> merges;

    while (!heap.empty()) {
        const MergeCandidate cand = heap.top();
        heap.pop();
        // Walk vectors are immutable per community id, so a candidate is
        // stale only when one side has already been merged away.
        if (!comms[cand.a].alive || !comms[cand.b].alive) continue;

        const int a = cand.a;
        const int b = cand.b;
        const int merged = static_cast<int>(comms.size());

        Community c;
        c.members = comms[a].members;
        c.members.insert(c.members.end(), comms[b].members.begin(), comms[b].members.end());
        const double na = static_cast<double>(comms[a].members.size());
        const double nb = static_cast<double>(comms[b].members.size());
        c.walk.resize(n);
        for (int k = 0; k < n; ++k) {
            c.walk[k] = (na * comms[a].walk[k] + nb * comms[b].walk[k]) / (na + nb);
        }
        const double cross = comms[a].between.at(b);
        c.internal = comms[a].internal + comms[b].internal + 2.0 * cross;
        c.total_degree = comms[a].total_degree + comms[b].total_degree;
        c.min_file_node = g.nodes[comms[a].min_file_node].file <
                                  g.nodes[comms[b].min_file_node].file
                              ? comms[a].min_file_node
                              : comms[b].min_file_node;
        c.alive = true;
        for (const int side : {a, b}) {
            for (const auto& [other, w] : comms[side].between) {
                if (other == a || other == b) continue;
                c.between[other] += w;
            }
        }

        comms[a].alive = false;
        comms[b].alive = false;
        comms[a].walk.clear();
        comms[b].walk.clear();
        comms.push_back(std::move(c));

        for (const auto& [other, w] : comms[merged].between) {
            comms[other].between.erase(a);
            comms[other].between.erase(b);
            comms[other].between[merged] = w;
        }
        for (const auto& [other, w] : comms[merged].between) {
            push_candidate(merged, other);
        }

        if (two_w > 0.0) {
            const double ta = comms[a].total_degree / two_w;
            const double tb = comms[b].total_degree / two_w;
            q += 2.0 * cross / two_w - 2.0 * ta * tb;
        }
        merges.emplace_back(a, b);
        if (q > best_q) {
            best_q = q;
            best_state = static_cast<int>(merges.size());
        }
    }

    // Rebuild the partition at the best cut: community n + s is the one
    // created by merge s, so replay the alive flags up to best_state.
    std::vector<bool> alive(comms.size(), false);
    for (int v = 0; v < n; ++v) alive[v] = true;
    for (int s = 0; s < best_state; ++s) {
        const auto [a, b] = merges[s];
        alive[a] = false;
        alive[b] = false;
        alive[n + s] = true;
    }
    for (std::size_t i = 0; i < comms.size(); ++i) {
        if (alive[i]) result.communities.push_back(comms[i].members);
    }

    for (auto& community : result.communities) {
        std::sort(community.begin(), community.end(), [&](int x, int y) {
            return g.nodes[x].file < g.nodes[y].file;
        });
    }
    std::sort(result.communities.begin(), result.communities.end(),
              [&](const std::vector<int>& x, const std::vector<int>& y) {
                  if (x.size() != y.size()) return x.size() > y.size();
                  return g.nodes[x.front()].file < g.nodes[y.front()].file;
              });

    result.modularity_q = modularity_q(g, result.communities);
    return result;
}

} // namespace vivid
