#pragma once

#include "vivid/metrics.hpp"

#include <cstddef>

namespace vivid {

enum class EigenDirection { out, in };

struct EigenResult {
    MetricVector vector;     // max-normalized: peak value 1 when non-zero
    double lambda = 0.0;     // dominant eigenvalue estimate
    int iterations = 0;
    double residual = 0.0;   // max-norm of A*v - lambda*v
    bool converged = false;
    bool degenerate = false; // iteration collapsed to the zero vector
};

struct PageRankResult {
    MetricVector vector;     // sums to 1
    double damping = 0.85;
    int iterations = 0;
    bool converged = false;
};

// Shortest-path betweenness over ordered pairs, unweighted hop counts,
// endpoints excluded, un-normalized. Self-loops ignored.
MetricVector betweenness(const VdfGraph& g);

// Power iteration on the weighted adjacency A (out) or its transpose (in),
// self-loops excluded, uniform positive start, max-normalized each step.
// Nodes outside the dominant component may legitimately converge to 0.
EigenResult eigenvector(const VdfGraph& g, EigenDirection direction,
                        double tol = 1e-10, int max_iter = 10000);

// PR(u) = (1-d)/N + d * sum over in-neighbors of PR(v) * w(v->u)/W_out(v),
// weighted out-distribution, dangling mass redistributed uniformly.
PageRankResult pagerank(const VdfGraph& g, double damping = 0.85,
                        double tol = 1e-12, int max_iter = 10000);

// Number of maximal cliques of the undirected projection containing each
// node; isolated nodes get 0. Throws ResourceError when the enumeration
// exceeds max_cliques.
MetricVector cross_clique(const VdfGraph& g, std::size_t max_cliques = 1000000);

} // namespace vivid
