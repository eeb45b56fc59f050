#pragma once

#include <set>
#include <string>
#include <vector>

#include "dyadic.hpp"
#include "local_function.hpp"

namespace qlocal {

// Independent post-condition checkers.  These work from raw adjacency only,
// never from the elimination algorithm's bookkeeping.

inline bool verify_nonconnected_vertices(const DepGraph& g, const std::vector<int>& s,
                                         const std::vector<int>& r) {
    std::set<int> del(s.begin(), s.end());
    std::set<int> used;
    for (int v : r) {
        for (int d : g.adj[v]) {
            if (del.count(d)) continue;
            if (!used.insert(d).second) return false;
        }
    }
    return true;
}

// Pairwise non-connectedness of the neighborhoods N_S(i): for outputs u, v in
// different neighborhoods, I_S(u) and I_S(v) must be disjoint.  Also reports
// the largest neighborhood size.
inline bool verify_nonconnected_neighborhoods(const DepGraph& g, const std::vector<int>& s,
                                              const std::vector<int>& indices, int* max_size = nullptr) {
    std::set<int> del(s.begin(), s.end());
    std::set<int> used;  // inputs touched by earlier neighborhoods
    int biggest = 0;
    for (int i : indices) {
        auto nbhd = neighborhood(g, i, s);
        biggest = std::max(biggest, static_cast<int>(nbhd.size()));
        std::set<int> mine;
        for (int u : nbhd)
            for (int d : g.adj[u])
                if (!del.count(d)) mine.insert(d);
        for (int d : mine)
            if (!used.insert(d).second) return false;
    }
    if (max_size) *max_size = biggest;
    return true;
}

struct VertexElimination {
    std::vector<int> removed_inputs;       // S
    std::vector<int> nonconnected_outputs;  // R
    bool bounds_met = false;               // |S| <= |R|/beta and |R| >= n/lambda
};

namespace detail {

// Greedy pass: delete right vertices of degree > threshold, then scan left
// vertices in index order keeping those whose remaining inputs are disjoint
// from everything kept so far.
inline VertexElimination eliminate_at_threshold(const DepGraph& g, size_t threshold) {
    std::vector<int> right_degree(g.right_count, 0);
    for (const auto& a : g.adj)
        for (int d : a) ++right_degree[d];
    VertexElimination out;
    std::set<int> del;
    for (int j = 0; j < g.right_count; ++j) {
        if (static_cast<size_t>(right_degree[j]) > threshold) {
            del.insert(j);
            out.removed_inputs.push_back(j);
        }
    }
    std::set<int> used;
    for (int v = 0; v < g.left_count; ++v) {
        bool clash = false;
        for (int d : g.adj[v])
            if (!del.count(d) && used.count(d)) clash = true;
        if (clash) continue;
        for (int d : g.adj[v])
            if (!del.count(d)) used.insert(d);
        out.nonconnected_outputs.push_back(v);
    }
    return out;
}

inline mpz_class vertex_hypothesis_bound(int d, const Dyadic& beta) {
    // 2d * (2 d beta + 1)^(2d), rounded up so the comparison is conservative.
    Dyadic inner = Dyadic(2 * d) * beta + Dyadic::one();
    mpz_class ceil_inner = inner.num() >> inner.denom_exp();
    if ((inner.num() & ((mpz_class(1) << inner.denom_exp()) - 1)) != 0) ++ceil_inner;
    mpz_class pow = 1;
    for (int i = 0; i < 2 * d; ++i) pow *= ceil_inner;
    return 2 * d * pow;
}

}  // namespace detail

// Removes a small input set S so that the outputs in R become pairwise
// non-connected.  Sweeps degree thresholds and keeps the best verified result;
// the returned bounds_met flag reports whether |S| <= |R|/beta and
// |R| >= left_count/lambda both hold.
inline VertexElimination eliminate_vertices(const DepGraph& g, const Dyadic& beta, const Dyadic& lambda) {
    if (beta < Dyadic::one() || lambda < Dyadic::one())
        throw std::invalid_argument("beta and lambda must be >= 1");
    int d = std::max(1, g.left_degree_bound());
    if (lambda < Dyadic(detail::vertex_hypothesis_bound(d, beta), 0))
        throw std::invalid_argument("lambda below the graph elimination hypothesis");
    size_t max_degree = 0;
    {
        std::vector<int> right_degree(g.right_count, 0);
        for (const auto& a : g.adj)
            for (int dep : a) ++right_degree[dep];
        for (int deg : right_degree) max_degree = std::max(max_degree, static_cast<size_t>(deg));
    }
    VertexElimination best;
    bool have = false;
    for (size_t threshold = max_degree;; threshold = threshold / 2) {
        VertexElimination cand = detail::eliminate_at_threshold(g, threshold);
        bool met = Dyadic(static_cast<long>(cand.removed_inputs.size())) * beta <=
                       Dyadic(static_cast<long>(cand.nonconnected_outputs.size())) &&
                   Dyadic(static_cast<long>(cand.nonconnected_outputs.size())) * lambda >=
                       Dyadic(g.left_count);
        cand.bounds_met = met;
        bool better = !have ||
                      (cand.bounds_met && !best.bounds_met) ||
                      (cand.bounds_met == best.bounds_met &&
                       cand.nonconnected_outputs.size() > best.nonconnected_outputs.size());
        if (better) {
            best = cand;
            have = true;
        }
        if (threshold == 0) break;
    }
    if (!verify_nonconnected_vertices(g, best.removed_inputs, best.nonconnected_outputs))
        throw std::logic_error("elimination produced a connected output set");
    return best;
}

struct NeighborhoodElimination {
    bool ok = false;
    std::vector<int> removed_inputs;  // S
    std::vector<int> indices;         // i_1 .. i_r
    int t = 0;                        // largest neighborhood size
    std::string message;
};

// Finds indices whose post-restriction neighborhoods are pairwise
// non-connected and of size at most kappa, with |S| <= r/F(t) and
// r >= left_count/lambda.  Returns a diagnostic instead of an unverified
// result when no threshold meets the bounds.
inline NeighborhoodElimination eliminate_neighborhoods(const DepGraph& g,
                                                       const std::function<Dyadic(int)>& f_bound,
                                                       const Dyadic& lambda, const Dyadic& kappa) {
    if (lambda < Dyadic::one() || kappa < Dyadic::one())
        throw std::invalid_argument("lambda and kappa must be >= 1");
    size_t max_degree = 0;
    {
        std::vector<int> right_degree(g.right_count, 0);
        for (const auto& a : g.adj)
            for (int dep : a) ++right_degree[dep];
        for (int deg : right_degree) max_degree = std::max(max_degree, static_cast<size_t>(deg));
    }
    NeighborhoodElimination best;
    size_t best_r = 0;
    for (size_t threshold = max_degree;; threshold = threshold / 2) {
        std::vector<int> s;
        {
            std::vector<int> right_degree(g.right_count, 0);
            for (const auto& a : g.adj)
                for (int dep : a) ++right_degree[dep];
            for (int j = 0; j < g.right_count; ++j)
                if (static_cast<size_t>(right_degree[j]) > threshold) s.push_back(j);
        }
        std::set<int> del(s.begin(), s.end());
        std::set<int> used;
        std::vector<int> indices;
        int t = 0;
        for (int i = 0; i < g.left_count; ++i) {
            auto nbhd = neighborhood(g, i, s);
            if (Dyadic(static_cast<long>(nbhd.size())) > kappa) continue;
            std::set<int> mine;
            for (int u : nbhd)
                for (int dep : g.adj[u])
                    if (!del.count(dep)) mine.insert(dep);
            bool clash = false;
            for (int dep : mine)
                if (used.count(dep)) clash = true;
            if (clash) continue;
            used.insert(mine.begin(), mine.end());
            indices.push_back(i);
            t = std::max(t, static_cast<int>(nbhd.size()));
        }
        if (t == 0) t = 1;
        bool met = !indices.empty() &&
                   Dyadic(static_cast<long>(s.size())) * f_bound(t) <=
                       Dyadic(static_cast<long>(indices.size())) &&
                   Dyadic(static_cast<long>(indices.size())) * lambda >= Dyadic(g.left_count);
        if (met && indices.size() > best_r) {
            int verified_t = 0;
            if (!verify_nonconnected_neighborhoods(g, s, indices, &verified_t))
                throw std::logic_error("neighborhood elimination produced connected neighborhoods");
            best.ok = true;
            best.removed_inputs = s;
            best.indices = indices;
            best.t = verified_t == 0 ? 1 : verified_t;
            best_r = indices.size();
        }
        if (threshold == 0) break;
    }
    if (!best.ok)
        best.message = "no threshold satisfies |S| <= r/F(t), r >= n/lambda, t <= kappa";
    return best;
}

}  // namespace qlocal
