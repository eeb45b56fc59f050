#pragma once

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qlocal {

// Undirected tree with a designated root vertex v* (used by the reduction and
// by gate scheduling; the distribution itself ignores it).
struct Tree {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges;
    int root = 0;

    int edge_count() const { return static_cast<int>(edges.size()); }

    std::vector<std::vector<int>> adjacency() const {
        std::vector<std::vector<int>> adj(vertex_count);
        for (int e = 0; e < edge_count(); ++e) {
            adj[edges[e].first].push_back(e);
            adj[edges[e].second].push_back(e);
        }
        return adj;
    }

    int max_degree() const {
        std::vector<int> deg(vertex_count, 0);
        for (auto [u, v] : edges) ++deg[u], ++deg[v];
        return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
    }

    void validate() const {
        if (vertex_count < 1) throw std::invalid_argument("tree needs at least one vertex");
        if (edge_count() != vertex_count - 1) throw std::invalid_argument("tree must have |V|-1 edges");
        if (root < 0 || root >= vertex_count) throw std::invalid_argument("root out of range");
        for (auto [u, v] : edges) {
            if (u < 0 || u >= vertex_count || v < 0 || v >= vertex_count || u == v)
                throw std::invalid_argument("bad edge endpoint");
        }
        auto dist = distances_from(root);
        if (std::count(dist.begin(), dist.end(), -1) > 0)
            throw std::invalid_argument("tree is not connected");
    }

    // BFS distances from a vertex; -1 marks unreachable vertices.
    std::vector<int> distances_from(int start) const {
        std::vector<int> dist(vertex_count, -1);
        auto adj = adjacency();
        std::queue<int> q;
        dist[start] = 0;
        q.push(start);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int e : adj[u]) {
                int w = edges[e].first == u ? edges[e].second : edges[e].first;
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    q.push(w);
                }
            }
        }
        return dist;
    }

    // K = sum over v of |path(v*, v)|.
    long path_length_sum() const {
        auto dist = distances_from(root);
        long k = 0;
        for (int d : dist) k += d;
        return k;
    }
};

inline Tree make_path(int n, int root = 0) {
    Tree t;
    t.vertex_count = n;
    t.root = root;
    for (int i = 0; i + 1 < n; ++i) t.edges.emplace_back(i, i + 1);
    t.validate();
    return t;
}

inline Tree make_edge() { return make_path(2); }

inline Tree make_star(int leaves) {
    Tree t;
    t.vertex_count = leaves + 1;
    t.root = 0;
    for (int i = 1; i <= leaves; ++i) t.edges.emplace_back(0, i);
    t.validate();
    return t;
}

// Spanning tree of the side x side grid: the whole first row plus every
// column.  Vertex (r, c) has index r * side + c; v* is the top-left corner.
inline Tree comb_tree(int side) {
    if (side < 1) throw std::invalid_argument("comb_tree needs side >= 1");
    Tree t;
    t.vertex_count = side * side;
    t.root = 0;
    for (int c = 0; c + 1 < side; ++c) t.edges.emplace_back(c, c + 1);
    for (int c = 0; c < side; ++c)
        for (int r = 0; r + 1 < side; ++r) t.edges.emplace_back(r * side + c, (r + 1) * side + c);
    t.validate();
    return t;
}

}  // namespace qlocal
