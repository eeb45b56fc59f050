#pragma once

#include <string>
#include <vector>

#include "local_function.hpp"
#include "targets.hpp"
#include "tree.hpp"

namespace qlocal {

// What a sampler claims to produce, resolvable to an ExactDist.
struct TargetDescriptor {
    enum class Kind { DHARD, DHARD_STAR, PARITY_UNIFORM };
    Kind kind = Kind::DHARD;
    int n = 1;
    int m = 1;
    int parity = 0;  // PARITY_UNIFORM only

    ExactDist resolve(int budget_bits = kDefaultBudgetBits) const {
        switch (kind) {
            case Kind::DHARD: return dhard_exact({n, m, false}, budget_bits);
            case Kind::DHARD_STAR: return dhard_exact({n, m, true}, budget_bits);
            case Kind::PARITY_UNIFORM: return parity_uniform_dist(n, parity, budget_bits);
        }
        throw std::logic_error("bad target kind");
    }
};

struct SamplerSpec {
    std::string name;
    LocalFunction function;
    ProductDist input_biases;
    int claimed_locality = 0;
    TargetDescriptor target;

    // Exact distance between what the function produces and the claimed
    // target; zero means the construction is exact.
    Dyadic exactness_tv(int budget_bits = kDefaultBudgetBits) const {
        return tv_distance(output_dist(function, input_biases, budget_bits), target.resolve(budget_bits));
    }
};

// Uniform n-bit strings of fixed parity from n unbiased bits: the cyclic
// difference string r1+r2, r2+r3, ..., rn+r1, with the last bit flipped for
// odd parity.  2-local.
inline SamplerSpec parity_sampler(int n, int parity) {
    if (n < 2) throw std::invalid_argument("parity_sampler needs n >= 2");
    std::vector<OutputBit> outs;
    for (int i = 0; i < n; ++i) {
        bool flip = (parity & 1) && i == n - 1;
        outs.push_back(make_output({i, (i + 1) % n}, [flip](const std::vector<uint8_t>& v) {
            return ((v[0] ^ v[1]) ^ (flip ? 1 : 0)) != 0;
        }));
    }
    SamplerSpec spec;
    spec.name = "parity";
    spec.function = LocalFunction(n, std::move(outs));
    spec.input_biases = ProductDist::unbiased(n);
    spec.claimed_locality = 2;
    spec.target = {TargetDescriptor::Kind::PARITY_UNIFORM, n, 0, parity & 1};
    return spec;
}

namespace detail {

// Adds the cyclic even-parity chain output z_j over chain inputs
// [base, base + m), XORed with `extra`.
inline OutputBit chain_xor_output(int base, int m, int j, const std::vector<int>& extra_deps,
                                  const std::function<bool(const std::vector<uint8_t>&)>& extra) {
    std::vector<int> deps{base + j, base + (j + 1) % m};
    size_t chain_raw = deps.size();
    deps.insert(deps.end(), extra_deps.begin(), extra_deps.end());
    return make_output(deps, [chain_raw, extra](const std::vector<uint8_t>& v) {
        bool z = (v[0] ^ v[1]) != 0;
        std::vector<uint8_t> rest(v.begin() + chain_raw, v.end());
        return z ^ extra(rest);
    });
}

}  // namespace detail

// 6-local sampler for D_hard(n, m) from unbiased bits, m >= C(n+1, 2).
// Input layout: m chain bits for z, then n+1 AND-pairs for x~ = (x, b) (the
// last pair is unused because x~_{n+1} is the bare bit b), then b.
inline SamplerSpec build_prop_nc0_upper(int n, int m = -1) {
    if (n < 1) throw std::invalid_argument("needs n >= 1");
    int products = (n + 1) * n / 2;  // C(n+1, 2)
    if (m < 0) m = products;
    if (m < products) throw std::invalid_argument("needs m >= C(n+1, 2)");
    const int z_base = 0;
    auto pair_lo = [&](int i) { return m + 2 * i; };  // x~ coordinate i, 0-based
    const int b_input = m + 2 * (n + 1);
    const int input_count = b_input + 1;

    auto coord_deps = [&](int i) -> std::vector<int> {
        if (i < n) return {pair_lo(i), pair_lo(i) + 1};
        return {b_input};
    };
    auto coord_value = [&](int i, const std::vector<uint8_t>& v, size_t at) -> bool {
        return i < n ? (v[at] && v[at + 1]) : v[at] != 0;
    };

    std::vector<OutputBit> outs;
    for (int i = 0; i < n; ++i)
        outs.push_back(make_output({pair_lo(i), pair_lo(i) + 1},
                                   [](const std::vector<uint8_t>& v) { return v[0] && v[1]; }));
    int j = 0;
    for (int a = 0; a <= n; ++a) {
        for (int bcoord = a + 1; bcoord <= n; ++bcoord) {
            std::vector<int> extra = coord_deps(a);
            std::vector<int> eb = coord_deps(bcoord);
            size_t a_len = extra.size();
            extra.insert(extra.end(), eb.begin(), eb.end());
            outs.push_back(detail::chain_xor_output(
                z_base, m, j, extra, [=, &coord_value](const std::vector<uint8_t>& v) {
                    return coord_value(a, v, 0) && coord_value(bcoord, v, a_len);
                }));
            ++j;
        }
    }
    for (; j < m; ++j)
        outs.push_back(detail::chain_xor_output(z_base, m, j, {},
                                                [](const std::vector<uint8_t>&) { return false; }));

    SamplerSpec spec;
    spec.name = "prop51";
    spec.function = LocalFunction(input_count, std::move(outs));
    spec.input_biases = ProductDist::unbiased(static_cast<size_t>(input_count));
    spec.claimed_locality = 6;
    spec.target = {TargetDescriptor::Kind::DHARD, n, m, 0};
    return spec;
}

// 6-local sampler for D*_hard(n, n-1) from unbiased bits.  Input layout:
// n chain bits for the odd-weight x branch, n-1 chain bits r_2..r_n for the
// even-weight branch, m bits of uniform y for the odd branch, m chain bits
// for z, then the branch selector b.
inline SamplerSpec build_prop_nc0_upper2(int n) {
    if (n < 2) throw std::invalid_argument("needs n >= 2");
    int m = n - 1;
    const int s_base = 0;                  // n bits
    const int r_base = n;                  // r_2 .. r_n, index i -> r_base + i - 2
    const int yodd_base = 2 * n - 1;       // m bits
    const int z_base = yodd_base + m;      // m bits
    const int b_input = z_base + m;
    const int input_count = b_input + 1;
    auto r_in = [&](int i) { return r_base + i - 2; };  // valid for 2 <= i <= n

    std::vector<OutputBit> outs;
    // x_i = b ? x_odd_i : x_even_i, 1-based coordinate i
    for (int i = 1; i <= n; ++i) {
        std::vector<int> deps{b_input, s_base + i - 1, s_base + (i % n)};
        bool odd_flip = i == n;
        int even_lo = i >= 2 ? r_in(i) : -1;       // r_i, absent when i == 1
        int even_hi = i + 1 <= n ? r_in(i + 1) : -1;  // r_{i+1}, absent when i == n
        if (even_lo >= 0) deps.push_back(even_lo);
        if (even_hi >= 0) deps.push_back(even_hi);
        size_t even_at = 3;
        bool has_lo = even_lo >= 0, has_hi = even_hi >= 0;
        outs.push_back(make_output(deps, [=](const std::vector<uint8_t>& v) {
            bool odd = (v[1] ^ v[2] ^ (odd_flip ? 1 : 0)) != 0;
            bool lo = has_lo && v[even_at];
            bool hi = has_hi && v[even_at + (has_lo ? 1 : 0)];
            bool even = lo ^ hi;
            return v[0] ? odd : even;
        }));
    }
    // y_j = b ? y_odd_j : z_j ^ w_j with w_j = r_{j+1} + r_{j+1} r_{j+2}
    for (int j = 1; j <= m; ++j) {
        int w_lo = r_in(j + 1);
        int w_hi = j + 2 <= n ? r_in(j + 2) : -1;  // r_{n+1} = 0
        std::vector<int> deps{b_input, yodd_base + j - 1, z_base + j - 1, z_base + (j % m), w_lo};
        if (w_hi >= 0) deps.push_back(w_hi);
        bool has_hi = w_hi >= 0;
        outs.push_back(make_output(deps, [=](const std::vector<uint8_t>& v) {
            bool z = (v[2] ^ v[3]) != 0;
            bool rlo = v[4] != 0;
            bool rhi = has_hi && v[5];
            bool w = rlo ^ (rlo && rhi);
            return v[0] ? v[1] != 0 : z ^ w;
        }));
    }

    SamplerSpec spec;
    spec.name = "prop52";
    spec.function = LocalFunction(input_count, std::move(outs));
    spec.input_biases = ProductDist::unbiased(static_cast<size_t>(input_count));
    spec.claimed_locality = 6;
    spec.target = {TargetDescriptor::Kind::DHARD_STAR, n, m, 0};
    return spec;
}

// Steered construction: split x = x1 . x2 with |x1| = C-1 and reuse the base
// machinery on x2, paying C-1 extra dependencies per y bit.  Locality C + 5
// in the star case and max(6, 2C + 1) in the plain case.
inline SamplerSpec build_remark_extension(int n, int big_c, bool star) {
    if (big_c < 1) throw std::invalid_argument("needs C >= 1");
    if (star) {
        int m = n - big_c;
        if (m < 1) throw std::invalid_argument("infeasible: m = n - C must be >= 1");
        int n2 = n - big_c + 1;  // x2 length; m == n2 - 1
        if (n2 < 2) throw std::invalid_argument("infeasible: x2 block too short");
        const int x1_base = 0;              // C-1 unbiased bits, output directly
        const int r_base = big_c - 1;       // r_2 .. r_{n2}
        const int yunif_base = r_base + (n2 - 1);
        const int z_base = yunif_base + m;
        const int b_input = z_base + m;
        const int input_count = b_input + 1;
        auto r_in = [&](int i) { return r_base + i - 2; };

        std::vector<int> x1_all;
        for (int i = 0; i < big_c - 1; ++i) x1_all.push_back(x1_base + i);

        std::vector<OutputBit> outs;
        for (int i = 0; i < big_c - 1; ++i)
            outs.push_back(make_output({x1_base + i}, [](const std::vector<uint8_t>& v) { return v[0] != 0; }));
        // x2_i = r_i ^ r_{i+1} ^ (b and [i == n2]) with r_1 = r_{n2+1} = 0
        for (int i = 1; i <= n2; ++i) {
            std::vector<int> deps;
            int lo = i >= 2 ? r_in(i) : -1;
            int hi = i + 1 <= n2 ? r_in(i + 1) : -1;
            if (lo >= 0) deps.push_back(lo);
            if (hi >= 0) deps.push_back(hi);
            size_t chain_len = deps.size();
            bool flip_on_b = i == n2;
            deps.push_back(b_input);
            outs.push_back(make_output(deps, [=](const std::vector<uint8_t>& v) {
                bool acc = false;
                for (size_t k = 0; k < chain_len; ++k) acc ^= v[k] != 0;
                if (flip_on_b && v[chain_len]) acc = !acc;
                return acc;
            }));
        }
        // y_j: branch on b == parity(x1)
        for (int j = 1; j <= m; ++j) {
            std::vector<int> deps{b_input, yunif_base + j - 1, z_base + j - 1, z_base + (j % m)};
            size_t x1_at = deps.size();
            deps.insert(deps.end(), x1_all.begin(), x1_all.end());
            size_t w_at = deps.size();
            int w_lo = j + 1 <= n2 ? r_in(j + 1) : -1;
            int w_hi = j + 2 <= n2 ? r_in(j + 2) : -1;
            if (w_lo >= 0) deps.push_back(w_lo);
            if (w_hi >= 0) deps.push_back(w_hi);
            bool has_lo = w_lo >= 0, has_hi = w_hi >= 0;
            int nx1 = big_c - 1;
            bool corr_slot = j == 1;
            outs.push_back(make_output(deps, [=](const std::vector<uint8_t>& v) {
                bool b = v[0] != 0;
                int x1w = 0;
                for (int k = 0; k < nx1; ++k) x1w += v[x1_at + k];
                bool s = (x1w & 1) != 0;
                if (b != s) return v[1] != 0;  // uniform branch
                bool z = (v[2] ^ v[3]) != 0;
                bool rlo = has_lo && v[w_at];
                bool rhi = has_hi && v[w_at + (has_lo ? 1 : 0)];
                // even branch uses terms i in [2, n2]; odd branch only [2, n2-1]
                bool w;
                if (!b) {
                    w = rlo ^ (rlo && rhi);
                } else {
                    bool in_range = j + 1 <= n2 - 1;
                    w = in_range ? (rlo ^ (rlo && rhi)) : false;
                }
                bool corr = false;
                if (corr_slot) corr = !b ? ((x1w / 2) & 1) != 0 : (((x1w - 1) / 2 + 1) & 1) != 0;
                return static_cast<bool>(z ^ w ^ corr);
            }));
        }
        SamplerSpec spec;
        spec.name = "remark-star";
        spec.function = LocalFunction(input_count, std::move(outs));
        spec.input_biases = ProductDist::unbiased(static_cast<size_t>(input_count));
        spec.claimed_locality = big_c + 6;
        spec.target = {TargetDescriptor::Kind::DHARD_STAR, n, m, 0};
        return spec;
    }

    // Plain D_hard: x1 coordinates come from AND pairs, the inner machinery is
    // the product construction on x2~ = (x2, b), and two padding slots carry
    // the |x1| corrections.
    int m = (n + 1) * n / 2 - big_c;
    if (big_c < 2) throw std::invalid_argument("infeasible: plain remark needs C >= 2");
    int n2 = n - big_c + 1;
    if (n2 < 1 || m < 1) throw std::invalid_argument("infeasible parameters");
    int products = (n2 + 1) * n2 / 2;
    if (m < products + 2) throw std::invalid_argument("infeasible: not enough padding slots");
    const int z_base = 0;
    auto u_lo = [&](int i) { return m + 2 * i; };  // x2 coordinate i, 0-based, i < n2
    const int b_input = m + 2 * n2;
    auto v_lo = [&](int i) { return b_input + 1 + 2 * i; };  // x1 coordinate i, 0-based
    const int input_count = b_input + 1 + 2 * (big_c - 1);

    std::vector<int> x1_pairs;
    for (int i = 0; i < big_c - 1; ++i) {
        x1_pairs.push_back(v_lo(i));
        x1_pairs.push_back(v_lo(i) + 1);
    }

    auto coord_deps = [&](int i) -> std::vector<int> {  // x2~ coordinate, 0-based
        if (i < n2) return {u_lo(i), u_lo(i) + 1};
        return {b_input};
    };
    auto coord_val = [&](int i, const std::vector<uint8_t>& v, size_t at) -> bool {
        return i < n2 ? (v[at] && v[at + 1]) : v[at] != 0;
    };

    std::vector<OutputBit> outs;
    for (int i = 0; i < big_c - 1; ++i)
        outs.push_back(make_output({v_lo(i), v_lo(i) + 1},
                                   [](const std::vector<uint8_t>& v) { return v[0] && v[1]; }));
    for (int i = 0; i < n2; ++i)
        outs.push_back(make_output({u_lo(i), u_lo(i) + 1},
                                   [](const std::vector<uint8_t>& v) { return v[0] && v[1]; }));
    int j = 0;
    for (int a = 0; a <= n2; ++a) {
        for (int bc = a + 1; bc <= n2; ++bc) {
            std::vector<int> extra = coord_deps(a);
            std::vector<int> eb = coord_deps(bc);
            size_t a_len = extra.size();
            extra.insert(extra.end(), eb.begin(), eb.end());
            outs.push_back(detail::chain_xor_output(z_base, m, j, extra,
                                                    [=, &coord_val](const std::vector<uint8_t>& v) {
                                                        return coord_val(a, v, 0) && coord_val(bc, v, a_len);
                                                    }));
            ++j;
        }
    }
    int nx1 = big_c - 1;
    // correction slot: g(x1) = |x1|/2 when |x1| even, (|x1|-1)/2 + 1 when odd
    outs.push_back(detail::chain_xor_output(z_base, m, j++, x1_pairs, [nx1](const std::vector<uint8_t>& v) {
        int w = 0;
        for (int k = 0; k < nx1; ++k) w += (v[2 * k] && v[2 * k + 1]) ? 1 : 0;
        return (w & 1) == 0 ? ((w / 2) & 1) != 0 : (((w - 1) / 2 + 1) & 1) != 0;
    }));
    // selector slot: b and parity(x1), which re-randomizes y when |x| is odd
    {
        std::vector<int> extra{b_input};
        extra.insert(extra.end(), x1_pairs.begin(), x1_pairs.end());
        outs.push_back(detail::chain_xor_output(z_base, m, j++, extra, [nx1](const std::vector<uint8_t>& v) {
            int w = 0;
            for (int k = 0; k < nx1; ++k) w += (v[1 + 2 * k] && v[1 + 2 * k + 1]) ? 1 : 0;
            return v[0] && (w & 1);
        }));
    }
    for (; j < m; ++j)
        outs.push_back(detail::chain_xor_output(z_base, m, j, {},
                                                [](const std::vector<uint8_t>&) { return false; }));

    SamplerSpec spec;
    spec.name = "remark-plain";
    spec.function = LocalFunction(input_count, std::move(outs));
    spec.input_biases = ProductDist::unbiased(static_cast<size_t>(input_count));
    spec.claimed_locality = big_c + 6;
    spec.target = {TargetDescriptor::Kind::DHARD, n, m, 0};
    return spec;
}

struct ReductionInfo {
    LocalFunction function;
    int aux_count = 0;  // unbiased inputs appended after the 3|V|-1 sample bits
    long k = 0;         // sum of root-to-vertex path lengths
};

// The 3|V|-1 -> 2|V|+K map taking a D_host sample (plus unbiased aux bits) to
// a D_hard(|V|, |V|+K) sample: X passes through, Y is re-randomized by a
// parity-b string, and a K-bit string carries parity b + sum X_v W_e over the
// root paths.  At most 4-local.
inline ReductionInfo build_reduction(const Tree& tree) {
    tree.validate();
    int nv = tree.vertex_count;
    // path edges from root to each vertex
    auto adj = tree.adjacency();
    std::vector<int> parent_edge(nv, -1), order;
    {
        std::vector<bool> seen(nv, false);
        std::vector<int> stack{tree.root};
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
    std::vector<std::vector<int>> path_edges(nv);
    for (int v : order) {
        if (parent_edge[v] < 0) continue;
        int e = parent_edge[v];
        int p = tree.edges[e].first == v ? tree.edges[e].second : tree.edges[e].first;
        path_edges[v] = path_edges[p];
        path_edges[v].push_back(e);
    }
    long k = 0;
    for (const auto& pe : path_edges) k += static_cast<long>(pe.size());

    const int sample_len = 3 * nv - 1;
    const int x_in = 0;          // X_v at x_in + v
    const int y_in = nv;         // Y_v at y_in + v
    const int w_in = 2 * nv;     // W_e at w_in + e
    const int b_input = sample_len;
    const int s_base = b_input + 1;             // nv - 1 chain bits for Y'
    const int u_base = s_base + (nv - 1);       // K - 1 chain bits for the K block
    const int aux = 1 + (nv - 1) + std::max<long>(k - 1, 0);
    const int input_count = sample_len + aux;

    std::vector<OutputBit> outs;
    for (int v = 0; v < nv; ++v)
        outs.push_back(make_output({x_in + v}, [](const std::vector<uint8_t>& in) { return in[0] != 0; }));
    // Y_v + Y'_v where Y' is uniform of parity b via the s-chain
    for (int v = 0; v < nv; ++v) {
        std::vector<int> deps{y_in + v};
        if (nv == 1) {
            deps.push_back(b_input);
        } else if (v == 0) {
            deps.push_back(s_base);
        } else if (v < nv - 1) {
            deps.push_back(s_base + v - 1);
            deps.push_back(s_base + v);
        } else {
            deps.push_back(s_base + v - 1);
            deps.push_back(b_input);
        }
        outs.push_back(make_output(deps, [](const std::vector<uint8_t>& in) {
            bool acc = false;
            for (uint8_t x : in) acc ^= x != 0;
            return acc;
        }));
    }
    // K-block: term_j = X_{v_j} W_{e_j}, chained so the total parity is
    // b + sum of terms
    {
        long j = 0;
        for (int v = 0; v < nv; ++v) {
            for (int e : path_edges[v]) {
                int left = j == 0 ? b_input : u_base + static_cast<int>(j) - 1;
                int right = j + 1 == k ? -1 : u_base + static_cast<int>(j);
                std::vector<int> deps{left, x_in + v, w_in + e};
                if (right >= 0) deps.push_back(right);
                bool has_right = right >= 0;
                outs.push_back(make_output(deps, [has_right](const std::vector<uint8_t>& in) {
                    bool acc = (in[0] != 0) ^ (in[1] && in[2]);
                    if (has_right) acc ^= in[3] != 0;
                    return acc;
                }));
                ++j;
            }
        }
    }

    ReductionInfo info{LocalFunction(input_count, std::move(outs)), aux, k};
    return info;
}

}  // namespace qlocal
