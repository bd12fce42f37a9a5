#include "vivid/centrality.hpp"

#include "vivid/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <deque>
#include <vector>

namespace vivid {

namespace {

// Successor/predecessor lists with effective weights, self-loops dropped.
std::vector<std::vector<std::pair<int, double>>> weighted_adjacency(const VdfGraph& g,
                                                                    bool transpose) {
    std::vector<std::vector<std::pair<int, double>>> adj(g.nodes.size());
    for (const auto& e : g.edges) {
        if (e.from == e.to) continue;
        const double w = g.edge_weight(e);
        if (transpose) {
            adj[e.to].emplace_back(e.from, w);
        } else {
            adj[e.from].emplace_back(e.to, w);
        }
    }
    return adj;
}

} // namespace

MetricVector betweenness(const VdfGraph& g) {
    const int n = g.node_count();
    MetricVector m{"betweenness", std::vector<double>(n, 0.0), true};

    std::vector<std::vector<int>> succ(n);
    for (const auto& e : g.edges) {
        if (e.from != e.to) succ[e.from].push_back(e.to);
    }

    // Brandes accumulation, one BFS per source, ordered pairs.
    std::vector<int> dist(n);
    std::vector<double> sigma(n), delta(n);
    std::vector<std::vector<int>> pred(n);
    std::vector<int> order;
    order.reserve(n);
    for (int s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        for (auto& p : pred) p.clear();
        order.clear();

        dist[s] = 0;
        sigma[s] = 1.0;
        std::deque<int> queue{s};
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop_front();
            order.push_back(v);
            for (const int w : succ[v]) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if (dist[w] == dist[v] + 1) {
                    sigma[w] += sigma[v];
                    pred[w].push_back(v);
                }
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const int w = *it;
            for (const int v : pred[w]) {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            if (w != s) m.values[w] += delta[w];
        }
    }
    return m;
}

EigenResult eigenvector(const VdfGraph& g, EigenDirection direction, double tol,
                        int max_iter) {
    if (tol <= 0) throw ValidationError("eigenvector tolerance must be positive");
    const int n = g.node_count();
    EigenResult result;
    result.vector.name = direction == EigenDirection::out ? "out_eigenvector"
                                                          : "in_eigenvector";
    result.vector.values.assign(n, 0.0);
    if (n == 0) {
        result.degenerate = true;
        result.converged = true;
        return result;
    }

    // Out-direction: x'_i = sum over successors j of w(i->j) * x_j.
    const auto adj = weighted_adjacency(g, direction == EigenDirection::in);

    std::vector<double> x(n, 1.0), y(n, 0.0);
    auto apply = [&](const std::vector<double>& in, std::vector<double>& out) {
        for (int v = 0; v < n; ++v) {
            double sum = 0.0;
            for (const auto& [u, w] : adj[v]) sum += w * in[u];
            out[v] = sum;
        }
    };

    for (int iter = 1; iter <= max_iter; ++iter) {
        apply(x, y);
        double peak = 0.0;
        for (const double v : y) peak = std::max(peak, v);
        result.iterations = iter;
        if (peak == 0.0) {
            // No cycle mass left to sustain the iteration.
            result.degenerate = true;
            result.converged = true;
            result.lambda = 0.0;
            result.residual = 0.0;
            return result;
        }
        double change = 0.0;
        for (int v = 0; v < n; ++v) {
            y[v] /= peak;
            change = std::max(change, std::abs(y[v] - x[v]));
        }
        x.swap(y);
        result.lambda = peak;
        if (change < tol) {
            result.converged = true;
            break;
        }
    }

    apply(x, y);
    double lambda = 0.0;
    for (const double v : y) lambda = std::max(lambda, v);
    result.lambda = lambda;
    double residual = 0.0;
    for (int v = 0; v < n; ++v) {
        residual = std::max(residual, std::abs(y[v] - lambda * x[v]));
    }
    result.residual = residual;
    result.vector.values = std::move(x);
    return result;
}

PageRankResult pagerank(const VdfGraph& g, double damping, double tol, int max_iter) {
    if (damping <= 0.0 || damping >= 1.0) {
        throw ValidationError("pagerank damping must be in (0, 1)");
    }
    const int n = g.node_count();
    PageRankResult result;
    result.damping = damping;
    result.vector.name = "pagerank";
    if (n == 0) {
        result.converged = true;
        return result;
    }

    // Out-weight totals excluding self-loops; zero-total nodes are dangling.
    std::vector<double> out_weight(n, 0.0);
    for (const auto& e : g.edges) {
        if (e.from != e.to) out_weight[e.from] += g.edge_weight(e);
    }

    const double base = (1.0 - damping) / n;
    std::vector<double> x(n, 1.0 / n), next(n, 0.0);
    for (int iter = 1; iter <= max_iter; ++iter) {
        double dangling = 0.0;
        for (int v = 0; v < n; ++v) {
            if (out_weight[v] <= 0.0) dangling += x[v];
        }
        std::fill(next.begin(), next.end(), base + damping * dangling / n);
        for (const auto& e : g.edges) {
            if (e.from == e.to || out_weight[e.from] <= 0.0) continue;
            next[e.to] += damping * x[e.from] * g.edge_weight(e) / out_weight[e.from];
        }
        double l1 = 0.0;
        for (int v = 0; v < n; ++v) l1 += std::abs(next[v] - x[v]);
        x.swap(next);
        result.iterations = iter;
        if (l1 < tol) {
            result.converged = true;
            break;
        }
    }
    result.vector.values = std::move(x);
    return result;
}

namespace {

// Fixed-width bitset rows for the undirected projection.
class NeighborBits {
public:
    NeighborBits(int nodes) : words_((nodes + 63) / 64), rows_(nodes, std::vector<std::uint64_t>(words_, 0)) {}

    void add(int u, int v) { rows_[u][v / 64] |= std::uint64_t{1} << (v % 64); }
    const std::vector<std::uint64_t>& row(int v) const { return rows_[v]; }
    std::size_t words() const { return words_; }

private:
    std::size_t words_;
    std::vector<std::vector<std::uint64_t>> rows_;
};

struct CliqueCounter {
    const NeighborBits& nbr;
    std::vector<double>& counts;
    std::size_t cap;
    std::size_t emitted = 0;
    std::vector<int> current;

    void emit() {
        if (++emitted > cap) {
            throw ResourceError("maximal clique enumeration exceeded cap of " +
                                std::to_string(cap));
        }
        for (const int v : current) counts[v] += 1.0;
    }

    static bool empty(const std::vector<std::uint64_t>& bits) {
        for (const auto w : bits) {
            if (w != 0) return false;
        }
        return true;
    }

    static int popcount_and(const std::vector<std::uint64_t>& a,
                            const std::vector<std::uint64_t>& b) {
        int count = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            count += std::popcount(a[i] & b[i]);
        }
        return count;
    }

    void expand(std::vector<std::uint64_t> p, std::vector<std::uint64_t> x) {
        if (empty(p) && empty(x)) {
            if (current.size() >= 2) emit();  // singletons are isolated nodes
            return;
        }
        // Pivot on the vertex of P|X covering most of P.
        int pivot = -1, best = -1;
        for (std::size_t wi = 0; wi < p.size(); ++wi) {
            std::uint64_t both = p[wi] | x[wi];
            while (both) {
                const int v = static_cast<int>(wi * 64 + std::countr_zero(both));
                both &= both - 1;
                const int covered = popcount_and(p, nbr.row(v));
                if (covered > best) {
                    best = covered;
                    pivot = v;
                }
            }
        }
        for (std::size_t wi = 0; wi < p.size(); ++wi) {
            std::uint64_t candidates = p[wi] & ~nbr.row(pivot)[wi];
            while (candidates) {
                const int v = static_cast<int>(wi * 64 + std::countr_zero(candidates));
                candidates &= candidates - 1;

                std::vector<std::uint64_t> np(p.size()), nx(x.size());
                for (std::size_t i = 0; i < p.size(); ++i) {
                    np[i] = p[i] & nbr.row(v)[i];
                    nx[i] = x[i] & nbr.row(v)[i];
                }
                current.push_back(v);
                expand(std::move(np), std::move(nx));
                current.pop_back();

                p[wi] &= ~(std::uint64_t{1} << (v % 64));
                x[wi] |= std::uint64_t{1} << (v % 64);
            }
        }
    }
};

} // namespace

MetricVector cross_clique(const VdfGraph& g, std::size_t max_cliques) {
    const int n = g.node_count();
    MetricVector m{"cross_clique", std::vector<double>(n, 0.0), true};
    if (n == 0) return m;

    NeighborBits nbr(n);
    std::vector<bool> connected(n, false);
    for (const auto& e : g.edges) {
        if (e.from == e.to) continue;
        nbr.add(e.from, e.to);
        nbr.add(e.to, e.from);
        connected[e.from] = connected[e.to] = true;
    }

    std::vector<std::uint64_t> p(nbr.words(), 0), x(nbr.words(), 0);
    for (int v = 0; v < n; ++v) {
        if (connected[v]) p[v / 64] |= std::uint64_t{1} << (v % 64);
    }
    CliqueCounter counter{nbr, m.values, max_cliques};
    counter.expand(std::move(p), std::move(x));
    return m;
}

} // namespace vivid
