#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "qcircuit.hpp"
#include "statevector.hpp"
#include "tree.hpp"

namespace qlocal {

struct EdgeColoring {
    // edge index -> color in [1, colors]
    std::vector<int> color;
    int colors = 0;
};

// Proper edge coloring of a tree with at most max-degree colors, by DFS from
// the root: each child edge takes the smallest color unused at the parent and
// different from the parent edge's color.
inline EdgeColoring edge_color(const Tree& tree) {
    tree.validate();
    EdgeColoring ec;
    ec.color.assign(tree.edge_count(), 0);
    auto adj = tree.adjacency();
    std::vector<int> parent_edge(tree.vertex_count, -1);
    std::vector<int> order;
    {
        std::vector<int> stack{tree.root};
        std::vector<bool> seen(tree.vertex_count, false);
        seen[tree.root] = true;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            order.push_back(u);
            for (int e : adj[u]) {
                int v = tree.edges[e].first == u ? tree.edges[e].second : tree.edges[e].first;
                if (!seen[v]) {
                    seen[v] = true;
                    parent_edge[v] = e;
                    stack.push_back(v);
                }
            }
        }
    }
    for (int u : order) {
        int avoid = parent_edge[u] >= 0 ? ec.color[parent_edge[u]] : 0;
        int next = 1;
        for (int e : adj[u]) {
            if (e == parent_edge[u]) continue;
            if (next == avoid) ++next;
            ec.color[e] = next;
            ec.colors = std::max(ec.colors, next);
            ++next;
            if (next == avoid) ++next;
        }
    }
    return ec;
}

namespace detail {

// A CNOT job (z-qubit of vertex v) onto (w-qubit of edge e).  Scheduling the
// fan is edge coloring of the incidence graph, which for a tree is the
// subdivided tree; greedy DFS colors it with max(max_degree, 2) colors, so
// every color class is a set of CNOTs acting on disjoint (z, w) pairs.
struct CnotJob {
    int vertex;
    int edge;
    int color;
};

inline std::vector<CnotJob> color_cnot_fan(const Tree& tree, int* colors_out) {
    int nv = tree.vertex_count;
    int ne = tree.edge_count();
    int nodes = nv + ne;  // node nv + e represents edge e
    std::vector<std::vector<std::pair<int, int>>> adj(nodes);  // (other node, job id)
    std::vector<CnotJob> jobs;
    for (int e = 0; e < ne; ++e) {
        for (int v : {tree.edges[e].first, tree.edges[e].second}) {
            int id = static_cast<int>(jobs.size());
            jobs.push_back({v, e, 0});
            adj[v].push_back({nv + e, id});
            adj[nv + e].push_back({v, id});
        }
    }
    std::vector<int> parent_job(nodes, -1);
    std::vector<int> order;
    std::vector<bool> seen(nodes, false);
    std::vector<int> stack{tree.root};
    seen[tree.root] = true;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        order.push_back(u);
        for (auto [v, id] : adj[u]) {
            if (!seen[v]) {
                seen[v] = true;
                parent_job[v] = id;
                stack.push_back(v);
            }
        }
    }
    int colors = 0;
    for (int u : order) {
        int avoid = parent_job[u] >= 0 ? jobs[parent_job[u]].color : 0;
        int next = 1;
        for (auto [v, id] : adj[u]) {
            if (id == parent_job[u]) continue;
            if (next == avoid) ++next;
            jobs[id].color = next;
            colors = std::max(colors, next);
            ++next;
            if (next == avoid) ++next;
        }
    }
    *colors_out = colors;
    return jobs;
}

}  // namespace detail

// Fig.-1-left circuit: qubits [0, n) hold x, [n, 2n) hold the cat-state
// register that becomes y.  The cat state itself is the caller's advice input.
inline QCircuit build_php(int n) {
    if (n < 1) throw std::invalid_argument("build_php needs n >= 1");
    QCircuit c;
    c.qubit_count = 2 * n;
    std::vector<Gate> cs_layer, h_layer;
    for (int i = 0; i < n; ++i) {
        cs_layer.push_back({GateKind::CS, {i, n + i}});
        h_layer.push_back({GateKind::H, {n + i}});
    }
    c.layers = {cs_layer, h_layer};
    c.check_well_formed();
    return c;
}

// |x> tensor (|0^n> + |1^n>)/sqrt(2), the advice state for build_php(n).
inline ExactState php_input_state(const BitString& x) {
    int n = static_cast<int>(x.size());
    ExactState s;
    s.qubit_count = 2 * n;
    check_budget(s.qubit_count, kStatevectorBudgetQubits);
    s.re.assign(size_t{1} << s.qubit_count, 0);
    s.im.assign(size_t{1} << s.qubit_count, 0);
    uint64_t xi = x.to_ullong();
    uint64_t ones = (uint64_t{1} << n) - 1;
    s.re[xi] = 1;
    s.re[xi | (ones << n)] = 1;
    s.sqrt2_exp = 1;
    return s;
}

// Fig.-1-right circuit: qubits [0,nv) = x input, [nv,2nv) = Z, then W.
inline QCircuit build_rphp(const Tree& tree) {
    tree.validate();
    int nv = tree.vertex_count;
    int ne = tree.edge_count();
    if (ne < 1) throw std::invalid_argument("build_rphp needs at least one edge");
    auto z = [&](int v) { return nv + v; };
    auto w = [&](int e) { return 2 * nv + e; };
    int colors = 0;
    auto jobs = detail::color_cnot_fan(tree, &colors);
    QCircuit c;
    c.qubit_count = 3 * nv - 1;
    std::vector<Gate> h_layer;
    for (int v = 0; v < nv; ++v) h_layer.push_back({GateKind::H, {z(v)}});
    c.layers.push_back(h_layer);
    c.layers.insert(c.layers.end(), colors, {});
    for (const auto& job : jobs)
        c.layers[job.color].push_back({GateKind::CNOT, {z(job.vertex), w(job.edge)}});
    std::vector<Gate> cs_layer;
    for (int v = 0; v < nv; ++v) cs_layer.push_back({GateKind::CS, {v, z(v)}});
    c.layers.push_back(cs_layer);
    c.layers.push_back(h_layer);
    c.check_well_formed();
    return c;
}

// Register map for the D_host circuit on 5|V|-1 qubits.
struct DhostRegisters {
    int nv;
    int a(int i) const { return 2 * i; }
    int a2(int i) const { return 2 * i + 1; }
    int x(int i) const { return 2 * nv + i; }
    int z(int i) const { return 3 * nv + i; }
    int w(int e) const { return 4 * nv + e; }
    // The measured (X, Y, W) block.
    std::vector<int> xyw_coords() const {
        std::vector<int> c;
        for (int q = 2 * nv; q < 5 * nv - 1; ++q) c.push_back(q);
        return c;
    }
};

// Depth 2*max_degree + 1 for max_degree >= 2 (5 for the single edge, 4 for a
// lone vertex): one Hadamard layer, the CNOT fan colored over the incidence
// graph with Toffolis in parallel, dedicated CS layers, and a final Hadamard
// layer.  Hadamards appear only in the first and last layers.
inline QCircuit build_dhost_circuit(const Tree& tree) {
    tree.validate();
    int nv = tree.vertex_count;
    int ne = tree.edge_count();
    int delta = tree.max_degree();
    DhostRegisters reg{nv};
    QCircuit c;
    c.qubit_count = 5 * nv - 1;

    std::vector<Gate> first, last;
    for (int i = 0; i < 2 * nv; ++i) first.push_back({GateKind::H, {i}});
    for (int v = 0; v < nv; ++v) {
        first.push_back({GateKind::H, {reg.z(v)}});
        last.push_back({GateKind::H, {reg.z(v)}});
    }
    std::vector<Gate> toffolis;
    for (int v = 0; v < nv; ++v) toffolis.push_back({GateKind::TOFFOLI, {reg.a(v), reg.a2(v), reg.x(v)}});

    c.layers.push_back(first);
    if (ne == 0) {
        // Lone vertex: H, Toffoli, CS, H.
        c.layers.push_back(toffolis);
        c.layers.push_back({{GateKind::CS, {reg.x(0), reg.z(0)}}});
        c.layers.push_back(last);
        c.check_well_formed();
        return c;
    }

    if (delta == 1) {
        // Single edge: the second CNOT shares a layer with the first CS.
        int u = tree.edges[0].first, v = tree.edges[0].second;
        std::vector<Gate> l2 = toffolis;
        l2.push_back({GateKind::CNOT, {reg.z(u), reg.w(0)}});
        c.layers.push_back(l2);
        c.layers.push_back({{GateKind::CNOT, {reg.z(v), reg.w(0)}}, {GateKind::CS, {reg.x(u), reg.z(u)}}});
        c.layers.push_back({{GateKind::CS, {reg.x(v), reg.z(v)}}});
        c.layers.push_back(last);
        c.check_well_formed();
        return c;
    }

    int colors = 0;
    auto jobs = detail::color_cnot_fan(tree, &colors);
    if (colors != delta) throw std::logic_error("incidence coloring exceeded max degree");
    c.layers.insert(c.layers.end(), 2 * delta - 1, {});
    for (const auto& job : jobs)
        c.layers[job.color].push_back({GateKind::CNOT, {reg.z(job.vertex), reg.w(job.edge)}});
    for (auto& g : toffolis) c.layers[1].push_back(g);
    int cs_layers = delta - 1;
    for (int v = 0; v < nv; ++v)
        c.layers[delta + 1 + (v % cs_layers)].push_back({GateKind::CS, {reg.x(v), reg.z(v)}});
    c.layers.push_back(last);
    c.check_well_formed();
    return c;
}

namespace detail {

inline bool is_path_tree(const Tree& tree) {
    if (tree.vertex_count == 1) return true;
    std::vector<int> deg(tree.vertex_count, 0);
    for (auto [u, v] : tree.edges) ++deg[u], ++deg[v];
    int ones = 0;
    for (int d : deg) {
        if (d > 2) return false;
        if (d == 1) ++ones;
    }
    return ones == 2;
}

inline std::optional<int> comb_side_of(const Tree& tree) {
    int side = 1;
    while (side * side < tree.vertex_count) ++side;
    if (side * side != tree.vertex_count) return std::nullopt;
    Tree want = comb_tree(side);
    auto norm = [](std::pair<int, int> e) {
        return e.first < e.second ? e : std::make_pair(e.second, e.first);
    };
    std::set<std::pair<int, int>> a, b;
    for (auto e : tree.edges) a.insert(norm(e));
    for (auto e : want.edges) b.insert(norm(e));
    return a == b ? std::optional<int>(side) : std::nullopt;
}

struct LayoutBuilder {
    std::map<std::pair<int, int>, int> used;  // cell -> qubit
    std::vector<std::pair<int, int>> coords;

    explicit LayoutBuilder(int qubits) : coords(qubits, {INT32_MIN, INT32_MIN}) {}

    bool place(int qubit, int row, int col) {
        if (!used.emplace(std::make_pair(row, col), qubit).second) return false;
        coords[qubit] = {row, col};
        return true;
    }
    void unplace(int qubit) {
        used.erase(coords[qubit]);
        coords[qubit] = {INT32_MIN, INT32_MIN};
    }

    GridLayout finish() const {
        int min_row = 0, min_col = 0;
        for (auto [r, c] : coords) {
            min_row = std::min(min_row, r);
            min_col = std::min(min_col, c);
        }
        GridLayout g;
        for (auto [r, c] : coords) g.coords.push_back({r - min_row, c - min_col});
        return g;
    }
};

// Path layout: the z/w spine runs down one column, x hangs off alternating
// sides, and each Toffoli triple continues straight down from its x.
inline GridLayout path_layout(const Tree& tree) {
    int nv = tree.vertex_count;
    DhostRegisters reg{nv};
    LayoutBuilder lb(5 * nv - 1);
    // Order vertices along the path.
    std::vector<int> order;
    if (nv == 1) {
        order = {0};
    } else {
        std::vector<int> deg(nv, 0);
        auto adj = tree.adjacency();
        for (auto [u, v] : tree.edges) ++deg[u], ++deg[v];
        int start = 0;
        while (deg[start] != 1) ++start;
        order.push_back(start);
        int prev = -1, cur = start;
        while (static_cast<int>(order.size()) < nv) {
            for (int e : adj[cur]) {
                int nxt = tree.edges[e].first == cur ? tree.edges[e].second : tree.edges[e].first;
                if (nxt != prev) {
                    order.push_back(nxt);
                    prev = cur;
                    cur = nxt;
                    break;
                }
            }
        }
    }
    std::vector<int> pos(nv);
    for (int r = 0; r < nv; ++r) pos[order[r]] = r;
    bool ok = true;
    for (int r = 0; r < nv; ++r) {
        int v = order[r];
        int side = (r % 2 == 0) ? 2 : 0;
        ok = ok && lb.place(reg.z(v), 2 * r, 1);
        ok = ok && lb.place(reg.x(v), 2 * r, side);
        ok = ok && lb.place(reg.a2(v), 2 * r + 1, side);
        ok = ok && lb.place(reg.a(v), 2 * r + 2, side);
    }
    for (int e = 0; e < tree.edge_count(); ++e) {
        int r = std::min(pos[tree.edges[e].first], pos[tree.edges[e].second]);
        ok = ok && lb.place(reg.w(e), 2 * r + 1, 1);
    }
    if (!ok) throw std::logic_error("path layout collision");
    return lb.finish();
}

// Comb layout: heads across the top with their Toffoli triples pointing up,
// legs descending, and leg triples assigned to a free side by backtracking.
inline GridLayout comb_layout(const Tree& tree, int side) {
    int nv = tree.vertex_count;
    DhostRegisters reg{nv};
    LayoutBuilder lb(5 * nv - 1);
    const int rh = 3;
    auto vid = [&](int r, int c) { return r * side + c; };
    bool ok = true;
    for (int c = 0; c < side; ++c) {
        int v = vid(0, c);
        ok = ok && lb.place(reg.z(v), rh, 2 * c);
        ok = ok && lb.place(reg.x(v), rh - 1, 2 * c);
        ok = ok && lb.place(reg.a2(v), rh - 2, 2 * c);
        ok = ok && lb.place(reg.a(v), rh - 3, 2 * c);
        for (int r = 1; r < side; ++r) ok = ok && lb.place(reg.z(vid(r, c)), rh + 2 * r, 2 * c);
    }
    for (int e = 0; e < tree.edge_count(); ++e) {
        auto [u, v] = tree.edges[e];
        int ru = u / side, cu = u % side, rv = v / side, cv = v % side;
        if (ru == rv) {
            ok = ok && lb.place(reg.w(e), rh, 2 * std::min(cu, cv) + 1);
        } else {
            ok = ok && lb.place(reg.w(e), rh + 2 * std::min(ru, rv) + 1, 2 * cu);
        }
    }
    if (!ok) throw std::logic_error("comb layout collision");

    // Leg triples: for vertex (r, c) pick a side column and direction.
    struct Slot {
        int v;
        int row;  // row of x
    };
    std::vector<Slot> slots;
    for (int c = 0; c < side; ++c)
        for (int r = 1; r < side; ++r) slots.push_back({vid(r, c), rh + 2 * r});
    long nodes = 0;
    std::function<bool(size_t)> place_from = [&](size_t i) -> bool {
        if (i == slots.size()) return true;
        if (++nodes > 200000) return false;
        int v = slots[i].v;
        int c = v % side;
        int row = slots[i].row;
        for (int col : {2 * c + 1, 2 * c - 1}) {
            for (int dir : {+1, -1}) {
                if (!lb.place(reg.x(v), row, col)) continue;
                if (lb.place(reg.a2(v), row + dir, col)) {
                    if (lb.place(reg.a(v), row + 2 * dir, col)) {
                        if (place_from(i + 1)) return true;
                        lb.unplace(reg.a(v));
                    }
                    lb.unplace(reg.a2(v));
                }
                lb.unplace(reg.x(v));
            }
        }
        return false;
    };
    if (!place_from(0)) throw std::invalid_argument("no geometric layout found for this comb size");
    return lb.finish();
}

}  // namespace detail

// Grid coordinates for the qubits of build_dhost_circuit(tree); supported for
// paths and comb trees.
inline GridLayout grid_layout_for(const Tree& tree) {
    tree.validate();
    if (auto side = detail::comb_side_of(tree); side && *side >= 2) return detail::comb_layout(tree, *side);
    if (detail::is_path_tree(tree)) return detail::path_layout(tree);
    throw std::invalid_argument("grid layout supported only for paths and comb trees");
}

}  // namespace qlocal
