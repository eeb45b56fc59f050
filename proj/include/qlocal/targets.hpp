#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dist.hpp"
#include "rng.hpp"
#include "tree.hpp"

namespace qlocal {

struct DhardParams {
    int n = 1;
    int m = 1;
    bool star = false;  // star: x is unbiased instead of (1/4)-biased
};

inline Dyadic x_bias(bool star) { return star ? Dyadic::one_half() : Dyadic(1, 2); }

// Uniform distribution over len-bit strings of the given Hamming-weight parity.
inline ExactDist parity_uniform_dist(int len, int parity, int budget_bits = kDefaultBudgetBits) {
    if (len < 1) throw std::invalid_argument("parity_uniform_dist needs len >= 1");
    check_budget(len, budget_bits);
    ExactDist::Pmf pmf;
    Dyadic mass = Dyadic::pow2(static_cast<unsigned>(len - 1));
    for (uint64_t i = 0; i < (uint64_t{1} << len); ++i) {
        BitString key = BitString::from_index(i, len);
        if (static_cast<int>(key.popcount() & 1) == (parity & 1)) pmf[key] = mass;
    }
    return ExactDist(len, std::move(pmf));
}

// (x, y) with x from the biased product; y uniform when |x| is odd, otherwise
// uniform of parity |x|/2 mod 2.  Coordinates: x block then y block.
inline ExactDist dhard_exact(const DhardParams& p, int budget_bits = kDefaultBudgetBits) {
    if (p.n < 1 || p.m < 1) throw std::invalid_argument("dhard needs n, m >= 1");
    check_budget(static_cast<long>(p.n) + p.m, budget_bits);
    Dyadic gamma = x_bias(p.star);
    Dyadic one_minus = Dyadic::one() - gamma;
    ExactDist::Pmf pmf;
    for (uint64_t xi = 0; xi < (uint64_t{1} << p.n); ++xi) {
        BitString x = BitString::from_index(xi, p.n);
        size_t w = x.popcount();
        Dyadic mx = Dyadic::one();
        for (int i = 0; i < p.n; ++i) mx *= x.get(i) ? gamma : one_minus;
        if (w & 1) {
            Dyadic my = mx.shifted_down(static_cast<unsigned>(p.m));
            for (uint64_t yi = 0; yi < (uint64_t{1} << p.m); ++yi)
                pmf[x.concat(BitString::from_index(yi, p.m))] = my;
        } else {
            int target = static_cast<int>((w / 2) & 1);
            Dyadic my = mx.shifted_down(static_cast<unsigned>(p.m - 1));
            for (uint64_t yi = 0; yi < (uint64_t{1} << p.m); ++yi) {
                BitString y = BitString::from_index(yi, p.m);
                if (static_cast<int>(y.popcount() & 1) == target) pmf[x.concat(y)] = my;
            }
        }
    }
    return ExactDist(static_cast<size_t>(p.n) + p.m, std::move(pmf));
}

// (X, Y, W) over {0,1}^V x {0,1}^V x {0,1}^E, with W the edge differences of a
// hidden uniform Z.  Coordinates: X block, Y block, then W with edges in input
// order.
inline ExactDist dhost_exact(const Tree& tree, int budget_bits = kDefaultBudgetBits) {
    tree.validate();
    int nv = tree.vertex_count;
    int ne = tree.edge_count();
    check_budget(3L * nv - 1, budget_bits);
    check_budget(2L * nv, budget_bits);  // X * Z enumeration cost
    ExactDist::Pmf pmf;
    Dyadic gamma(1, 2);
    Dyadic one_minus = Dyadic::one() - gamma;
    for (uint64_t xi = 0; xi < (uint64_t{1} << nv); ++xi) {
        BitString x = BitString::from_index(xi, nv);
        size_t xw = x.popcount();
        Dyadic mx = Dyadic::one();
        for (int i = 0; i < nv; ++i) mx *= x.get(i) ? gamma : one_minus;
        for (uint64_t zi = 0; zi < (uint64_t{1} << nv); ++zi) {
            BitString w(ne);
            for (int e = 0; e < ne; ++e)
                w.set(e, (((zi >> tree.edges[e].first) ^ (zi >> tree.edges[e].second)) & 1) != 0);
            Dyadic mxz = mx.shifted_down(static_cast<unsigned>(nv));
            if (xw & 1) {
                Dyadic my = mxz.shifted_down(static_cast<unsigned>(nv));
                for (uint64_t yi = 0; yi < (uint64_t{1} << nv); ++yi) {
                    BitString key = x.concat(BitString::from_index(yi, nv)).concat(w);
                    auto [it, inserted] = pmf.emplace(key, my);
                    if (!inserted) it->second += my;
                }
            } else {
                int target = static_cast<int>((std::popcount(zi & xi) + xw / 2) & 1);
                Dyadic my = mxz.shifted_down(static_cast<unsigned>(nv - 1));
                for (uint64_t yi = 0; yi < (uint64_t{1} << nv); ++yi) {
                    BitString y = BitString::from_index(yi, nv);
                    if (static_cast<int>(y.popcount() & 1) != target) continue;
                    BitString key = x.concat(y).concat(w);
                    auto [it, inserted] = pmf.emplace(key, my);
                    if (!inserted) it->second += my;
                }
            }
        }
    }
    return ExactDist(3 * static_cast<size_t>(nv) - 1, std::move(pmf));
}

// k-fold product padded with a point mass on 0^pad.
inline ExactDist dhost_power(const Tree& tree, int k, int pad, int budget_bits = kDefaultBudgetBits) {
    if (k < 1 || pad < 0) throw std::invalid_argument("dhost_power needs k >= 1, pad >= 0");
    long total = k * (3L * tree.vertex_count - 1) + pad;
    check_budget(total, budget_bits);
    ExactDist d = kfold(dhost_exact(tree, budget_bits), k, budget_bits);
    if (pad > 0) d = product(d, ExactDist::point_mass(BitString(static_cast<size_t>(pad))), budget_bits);
    return d;
}

namespace detail {
// Uniform string of the requested parity: len-1 free bits, last bit fixes it.
inline BitString draw_parity_string(SplitMix64& rng, int len, int parity) {
    BitString y(static_cast<size_t>(len));
    int acc = 0;
    for (int i = 0; i + 1 < len; ++i) {
        bool b = rng.next_bit();
        y.set(static_cast<size_t>(i), b);
        acc ^= b ? 1 : 0;
    }
    y.set(static_cast<size_t>(len - 1), (acc ^ parity) != 0);
    return y;
}
}  // namespace detail

inline std::vector<BitString> dhard_sampler(const DhardParams& p, uint64_t seed, size_t count) {
    if (p.n < 1 || p.m < 1) throw std::invalid_argument("dhard needs n, m >= 1");
    SplitMix64 rng(seed);
    Dyadic gamma = x_bias(p.star);
    std::vector<BitString> out;
    out.reserve(count);
    for (size_t s = 0; s < count; ++s) {
        BitString x(static_cast<size_t>(p.n));
        for (int i = 0; i < p.n; ++i) x.set(static_cast<size_t>(i), rng.bernoulli(gamma));
        size_t w = x.popcount();
        BitString y(static_cast<size_t>(p.m));
        if (w & 1) {
            for (int i = 0; i < p.m; ++i) y.set(static_cast<size_t>(i), rng.next_bit());
        } else {
            y = detail::draw_parity_string(rng, p.m, static_cast<int>((w / 2) & 1));
        }
        out.push_back(x.concat(y));
    }
    return out;
}

inline std::vector<BitString> dhost_sampler(const Tree& tree, uint64_t seed, size_t count) {
    tree.validate();
    int nv = tree.vertex_count;
    int ne = tree.edge_count();
    SplitMix64 rng(seed);
    Dyadic gamma(1, 2);
    std::vector<BitString> out;
    out.reserve(count);
    for (size_t s = 0; s < count; ++s) {
        BitString x(static_cast<size_t>(nv)), z(static_cast<size_t>(nv)), w(static_cast<size_t>(ne));
        for (int i = 0; i < nv; ++i) x.set(static_cast<size_t>(i), rng.bernoulli(gamma));
        for (int i = 0; i < nv; ++i) z.set(static_cast<size_t>(i), rng.next_bit());
        for (int e = 0; e < ne; ++e)
            w.set(static_cast<size_t>(e), z.get(static_cast<size_t>(tree.edges[e].first)) ^
                                              z.get(static_cast<size_t>(tree.edges[e].second)));
        size_t xw = x.popcount();
        BitString y(static_cast<size_t>(nv));
        if (xw & 1) {
            for (int i = 0; i < nv; ++i) y.set(static_cast<size_t>(i), rng.next_bit());
        } else {
            int zx = 0;
            for (int i = 0; i < nv; ++i) zx ^= (x.get(static_cast<size_t>(i)) && z.get(static_cast<size_t>(i))) ? 1 : 0;
            y = detail::draw_parity_string(rng, nv, static_cast<int>((zx + xw / 2) & 1));
        }
        out.push_back(x.concat(y).concat(w));
    }
    return out;
}

}  // namespace qlocal
