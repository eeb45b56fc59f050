#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <thread>
#include <vector>

#include "builders.hpp"
#include "statevector.hpp"
#include "targets.hpp"

namespace qlocal {

namespace detail {

// State of the (Z, W) registers after H on Z and the CNOT fan, shared by all
// x branches.  Qubit v holds Z_v, qubit nv + e holds W_e.
inline ExactState factored_base_state(const Tree& tree) {
    int nv = tree.vertex_count;
    int nq = 2 * nv - 1;
    check_budget(nq, 23);
    ExactState s = ExactState::basis(BitString(static_cast<size_t>(nq)));
    for (int v = 0; v < nv; ++v) apply_h(s, v);
    for (int e = 0; e < tree.edge_count(); ++e) {
        apply_cnot(s, tree.edges[e].first, nv + e);
        apply_cnot(s, tree.edges[e].second, nv + e);
    }
    return s;
}

// Measurement numerators (units of 2^-sqrt2_exp) for one x branch: apply the
// CS layer with the X register fixed classically, then the final H on Z.
inline std::vector<int64_t> factored_branch_numerators(const ExactState& base, int nv, uint64_t x) {
    ExactState s = base;
    const uint64_t zmask = (uint64_t{1} << nv) - 1;
    for (uint64_t i = 0; i < s.dim(); ++i) {
        int k = std::popcount(i & zmask & x) & 3;
        int64_t r = s.re[i], m = s.im[i];
        switch (k) {
            case 1: s.re[i] = -m; s.im[i] = r; break;
            case 2: s.re[i] = -r; s.im[i] = -m; break;
            case 3: s.re[i] = m; s.im[i] = -r; break;
            default: break;
        }
    }
    for (int v = 0; v < nv; ++v) apply_h(s, v);
    std::vector<int64_t> num(s.dim());
    for (uint64_t i = 0; i < s.dim(); ++i) num[i] = s.re[i] * s.re[i] + s.im[i] * s.im[i];
    return num;
}

// Numerator of the exact conditional of D_host given X = x, in units of
// 2^-(2 nv): index = y | (w << nv).
inline std::vector<int64_t> dhost_conditional_numerators(const Tree& tree, uint64_t x) {
    int nv = tree.vertex_count;
    int ne = tree.edge_count();
    bool x_odd = std::popcount(x) & 1;
    int half = static_cast<int>((std::popcount(x) / 2) & 1);
    // per-w counts of z, split by the parity target <z,x> + |x|/2
    std::vector<std::array<int64_t, 2>> cnt(size_t{1} << ne, {0, 0});
    for (uint64_t z = 0; z < (uint64_t{1} << nv); ++z) {
        uint64_t w = 0;
        for (int e = 0; e < ne; ++e)
            w |= (((z >> tree.edges[e].first) ^ (z >> tree.edges[e].second)) & 1) << e;
        int p = (std::popcount(z & x) + half) & 1;
        ++cnt[w][p];
    }
    std::vector<int64_t> num(size_t{1} << (2 * nv - 1));
    for (uint64_t w = 0; w < (uint64_t{1} << ne); ++w) {
        if (cnt[w][0] + cnt[w][1] == 0) continue;
        for (uint64_t y = 0; y < (uint64_t{1} << nv); ++y) {
            int py = std::popcount(y) & 1;
            num[y | (w << nv)] = x_odd ? cnt[w][0] + cnt[w][1] : 2 * cnt[w][py];
        }
    }
    return num;
}

inline mpz_class pow3(int k) {
    mpz_class r = 1;
    for (int i = 0; i < k; ++i) r *= 3;
    return r;
}

}  // namespace detail

// Exact total variation distance between the measurement distribution of
// build_dhost_circuit(tree) on the (X, Y, W) block and dhost_exact(tree),
// computed branch by branch over x without materializing either pmf.
// Verified to agree with the full-statevector route for small trees.
inline Dyadic dhost_sim_tv(const Tree& tree, int threads = 0) {
    tree.validate();
    int nv = tree.vertex_count;
    ExactState base = detail::factored_base_state(tree);
    uint64_t nx = uint64_t{1} << nv;
    std::vector<mpz_class> branch_l1(nx);  // L1 numerator per branch, units 2^-(2 nv)
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    auto work = [&](int t) {
        for (uint64_t x = t; x < nx; x += static_cast<uint64_t>(threads)) {
            auto qnum = detail::factored_branch_numerators(base, nv, x);
            auto enum_ = detail::dhost_conditional_numerators(tree, x);
            int64_t l1 = 0;
            for (size_t i = 0; i < qnum.size(); ++i) l1 += std::abs(qnum[i] - enum_[i]);
            branch_l1[x] = static_cast<long>(l1);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(work, t);
    work(0);
    for (auto& th : pool) th.join();

    Dyadic tv;
    for (uint64_t x = 0; x < nx; ++x) {
        if (branch_l1[x] == 0) continue;
        int zeros = nv - std::popcount(x);
        // weight(x) * l1 / 2: 3^zeros / 4^nv * l1 / 2^(2 nv + 1)
        tv += Dyadic(detail::pow3(zeros) * branch_l1[x], static_cast<unsigned>(4 * nv + 1));
    }
    return tv;
}

// The same branch enumeration, assembled into a full ExactDist (exhaustive
// factored simulation).
inline ExactDist run_factored(const Tree& tree, int budget_bits = kDefaultBudgetBits) {
    tree.validate();
    int nv = tree.vertex_count;
    int ne = tree.edge_count();
    check_budget(3L * nv - 1, budget_bits);
    ExactState base = detail::factored_base_state(tree);
    ExactDist::Pmf pmf;
    for (uint64_t x = 0; x < (uint64_t{1} << nv); ++x) {
        auto qnum = detail::factored_branch_numerators(base, nv, x);
        mpz_class w3 = detail::pow3(nv - std::popcount(x));
        BitString xb = BitString::from_index(x, static_cast<size_t>(nv));
        for (uint64_t i = 0; i < qnum.size(); ++i) {
            if (qnum[i] == 0) continue;
            BitString y = BitString::from_index(i & ((uint64_t{1} << nv) - 1), static_cast<size_t>(nv));
            BitString w = BitString::from_index(i >> nv, static_cast<size_t>(ne));
            // weight(x) * qnum / 2^(2 nv)
            pmf[xb.concat(y).concat(w)] = Dyadic(w3 * static_cast<long>(qnum[i]), static_cast<unsigned>(4 * nv));
        }
    }
    return ExactDist(3 * static_cast<size_t>(nv) - 1, std::move(pmf));
}

// Sampler driven by the factored decomposition: draws x, then (y, w) from the
// cached branch distribution.
inline std::vector<BitString> factored_sampler(const Tree& tree, uint64_t seed, size_t count) {
    tree.validate();
    int nv = tree.vertex_count;
    int ne = tree.edge_count();
    ExactState base = detail::factored_base_state(tree);
    SplitMix64 rng(seed);
    std::map<uint64_t, ExactDist> cache;
    std::vector<BitString> out;
    out.reserve(count);
    Dyadic quarter(1, 2);
    for (size_t s = 0; s < count; ++s) {
        uint64_t x = 0;
        for (int v = 0; v < nv; ++v)
            if (rng.bernoulli(quarter)) x |= uint64_t{1} << v;
        auto it = cache.find(x);
        if (it == cache.end()) {
            auto qnum = detail::factored_branch_numerators(base, nv, x);
            ExactDist::Pmf pmf;
            for (uint64_t i = 0; i < qnum.size(); ++i)
                if (qnum[i] != 0)
                    pmf[BitString::from_index(i, static_cast<size_t>(2 * nv - 1))] =
                        Dyadic(static_cast<long>(qnum[i]), static_cast<unsigned>(2 * nv));
            it = cache.emplace(x, ExactDist(2 * static_cast<size_t>(nv) - 1, std::move(pmf))).first;
        }
        uint64_t draw = rng.next();
        BitString yw = sample(it->second, draw, 1)[0];
        std::vector<int> ycoords(nv), wcoords(ne);
        for (int i = 0; i < nv; ++i) ycoords[i] = i;
        for (int e = 0; e < ne; ++e) wcoords[e] = nv + e;
        out.push_back(BitString::from_index(x, static_cast<size_t>(nv))
                          .concat(yw.project(ycoords))
                          .concat(yw.project(wcoords)));
    }
    return out;
}

}  // namespace qlocal
