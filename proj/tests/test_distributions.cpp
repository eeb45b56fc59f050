#include <gtest/gtest.h>

#include "qlocal/targets.hpp"

using namespace qlocal;

TEST(Dhard, HandEnumeratedPmf) {
    // n = m = 1: x = 0 (mass 3/4) forces y = 0; x = 1 (mass 1/4) frees y.
    ExactDist d = dhard_exact({1, 1, false});
    EXPECT_EQ(d.mass(BitString::from_string("00")), Dyadic(3, 2));
    EXPECT_TRUE(d.mass(BitString::from_string("01")).is_zero());
    EXPECT_EQ(d.mass(BitString::from_string("10")), Dyadic(1, 3));
    EXPECT_EQ(d.mass(BitString::from_string("11")), Dyadic(1, 3));
}

TEST(Dhard, StarVariant) {
    ExactDist d = dhard_exact({1, 1, true});
    EXPECT_EQ(d.mass(BitString::from_string("00")), Dyadic::one_half());
    EXPECT_TRUE(d.mass(BitString::from_string("01")).is_zero());
    EXPECT_EQ(d.mass(BitString::from_string("10")), Dyadic(1, 2));
    EXPECT_EQ(d.mass(BitString::from_string("11")), Dyadic(1, 2));
}

TEST(Dhard, XMarginalIsBiasedProduct) {
    ExactDist d = dhard_exact({2, 2, false});
    EXPECT_EQ(marginal(d, {0, 1}), ProductDist::biased(2, Dyadic(1, 2)).expand());
}

TEST(Dhard, ZeroPattern) {
    // for even |x|, y of the wrong parity has zero mass
    for (int n = 1; n <= 3; ++n)
        for (int m = 1; m <= 3; ++m) {
            ExactDist d = dhard_exact({n, m, false});
            for (uint64_t xi = 0; xi < (uint64_t{1} << n); ++xi) {
                BitString x = BitString::from_index(xi, static_cast<size_t>(n));
                if (x.popcount() % 2 != 0) continue;
                int target = static_cast<int>((x.popcount() / 2) % 2);
                for (uint64_t yi = 0; yi < (uint64_t{1} << m); ++yi) {
                    BitString y = BitString::from_index(yi, static_cast<size_t>(m));
                    if (static_cast<int>(y.popcount() % 2) != target)
                        EXPECT_TRUE(d.mass(x.concat(y)).is_zero());
                }
            }
        }
}

TEST(ParityUniform, Basics) {
    ExactDist even = parity_uniform_dist(3, 0);
    EXPECT_EQ(even.support_size(), 4u);
    for (const auto& [key, mass] : even.pmf()) {
        EXPECT_EQ(key.popcount() % 2, 0u);
        EXPECT_EQ(mass, Dyadic(1, 2));
    }
    EXPECT_EQ(parity_uniform_dist(1, 1), ExactDist::point_mass(BitString::from_string("1")));
}

TEST(Dhost, SingleEdgeWMarginalUniform) {
    // W_e = Z_u + Z_v with Z uniform, so the edge bit is unbiased
    ExactDist d = dhost_exact(make_edge());
    EXPECT_EQ(d.len(), 5u);
    EXPECT_EQ(marginal(d, {4}), ProductDist::unbiased(1).expand());
}

TEST(Dhost, XMarginalIsBiasedProduct) {
    for (const Tree& t : {make_edge(), make_path(3)}) {
        ExactDist d = dhost_exact(t);
        std::vector<int> xcoords;
        for (int v = 0; v < t.vertex_count; ++v) xcoords.push_back(v);
        EXPECT_EQ(marginal(d, xcoords),
                  ProductDist::biased(static_cast<size_t>(t.vertex_count), Dyadic(1, 2)).expand());
    }
}

TEST(Dhost, AllZeroXForcesEvenY) {
    Tree t = make_path(3);
    ExactDist d = dhost_exact(t);
    int nv = t.vertex_count;
    for (const auto& [key, mass] : d.pmf()) {
        bool x_zero = true;
        for (int v = 0; v < nv; ++v) x_zero = x_zero && !key.get(static_cast<size_t>(v));
        if (!x_zero) continue;
        size_t yw = 0;
        for (int v = 0; v < nv; ++v) yw += key.get(static_cast<size_t>(nv + v)) ? 1 : 0;
        EXPECT_EQ(yw % 2, 0u);
    }
}

TEST(Dhost, OddXGivesUniformY) {
    Tree t = make_edge();
    ExactDist d = dhost_exact(t);
    // condition on X = 10 (mass 1/4 * 3/4 = 3/16): the Y block is uniform,
    // so every y value carries exactly (3/16)/4 = 3/64
    std::map<BitString, Dyadic> conditioned;
    Dyadic total;
    for (const auto& [key, mass] : d.pmf()) {
        if (key.get(0) && !key.get(1)) {
            conditioned[key.project({2, 3})] += mass;
            total += mass;
        }
    }
    EXPECT_EQ(total, Dyadic(3, 4));
    ASSERT_EQ(conditioned.size(), 4u);
    for (const auto& [key, mass] : conditioned) EXPECT_EQ(mass, Dyadic(3, 6));
}

TEST(Dhost, WConsistentWithSomeZ) {
    // every support point's W block is an edge-difference string of some Z
    Tree t = make_path(3);
    ExactDist d = dhost_exact(t);
    int nv = t.vertex_count;
    for (const auto& [key, mass] : d.pmf()) {
        // solve z from w with z_0 free: z_v = z_parent + w_e along the tree
        for (int z0 : {0, 1}) {
            std::vector<int> z(nv, -1);
            z[0] = z0;
            bool okfill = true;
            // path edges are (0,1), (1,2)
            for (int e = 0; e < t.edge_count(); ++e) {
                auto [u, v] = t.edges[e];
                int w = key.get(static_cast<size_t>(2 * nv + e)) ? 1 : 0;
                if (z[u] >= 0)
                    z[v] = z[u] ^ w;
                else if (z[v] >= 0)
                    z[u] = z[v] ^ w;
                else
                    okfill = false;
            }
            EXPECT_TRUE(okfill);
            for (int e = 0; e < t.edge_count(); ++e) {
                auto [u, v] = t.edges[e];
                EXPECT_EQ(z[u] ^ z[v], key.get(static_cast<size_t>(2 * nv + e)) ? 1 : 0);
            }
        }
    }
}

TEST(DhostPower, Basics) {
    Tree t = make_edge();
    EXPECT_EQ(dhost_power(t, 1, 0), dhost_exact(t));
    EXPECT_EQ(dhost_power(t, 1, 2),
              product(dhost_exact(t), ExactDist::point_mass(BitString::from_string("00"))));
    ExactDist sq = dhost_power(t, 2, 0);
    EXPECT_EQ(sq, kfold(dhost_exact(t), 2));
    Dyadic total;
    for (const auto& [key, mass] : sq.pmf()) total += mass;
    EXPECT_EQ(total, Dyadic::one());
}

TEST(Samplers, DhardEmpirical) {
    ExactDist d = dhard_exact({1, 1, false});
    auto emp = empirical(dhard_sampler({1, 1, false}, 42, 1 << 20));
    EXPECT_LT(tv_distance(emp, d).to_double(), 0.01);
}

TEST(Samplers, DhostEmpiricalXMarginal) {
    Tree t = make_edge();
    auto samples = dhost_sampler(t, 43, 1 << 20);
    size_t ones = 0;
    for (const auto& s : samples) ones += (s.get(0) ? 1 : 0) + (s.get(1) ? 1 : 0);
    double freq = static_cast<double>(ones) / (2.0 * static_cast<double>(samples.size()));
    EXPECT_NEAR(freq, 0.25, 0.01);
}

TEST(Samplers, Deterministic) {
    auto a = dhost_sampler(make_path(3), 7, 100);
    auto b = dhost_sampler(make_path(3), 7, 100);
    EXPECT_EQ(a, b);
    auto c = dhard_sampler({2, 2, false}, 9, 100);
    auto d = dhard_sampler({2, 2, false}, 9, 100);
    EXPECT_EQ(c, d);
}

TEST(Samplers, DhostEmpiricalTv) {
    Tree t = make_edge();
    auto emp = empirical(dhost_sampler(t, 44, 1 << 20));
    EXPECT_LT(tv_distance(emp, dhost_exact(t)).to_double(), 0.02);
}

TEST(Trees, CombSizes) {
    Tree c1 = comb_tree(1);
    EXPECT_EQ(c1.vertex_count, 1);
    EXPECT_EQ(c1.edge_count(), 0);
    Tree c2 = comb_tree(2);
    EXPECT_EQ(c2.vertex_count, 4);
    EXPECT_EQ(c2.edge_count(), 3);
    EXPECT_EQ(c2.max_degree(), 2);
    EXPECT_EQ(c2.path_length_sum(), 4);  // distances 0, 1, 1, 2 from the corner
    Tree c3 = comb_tree(3);
    EXPECT_EQ(c3.vertex_count, 9);
    EXPECT_EQ(c3.edge_count(), 8);
    EXPECT_EQ(c3.max_degree(), 3);
}

TEST(Trees, Validation) {
    Tree bad;
    bad.vertex_count = 3;
    bad.edges = {{0, 1}};
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    Tree cycle;
    cycle.vertex_count = 3;
    cycle.edges = {{0, 1}, {1, 2}, {2, 0}};
    EXPECT_THROW(cycle.validate(), std::invalid_argument);
    EXPECT_THROW(dhost_exact(cycle), std::invalid_argument);
}

TEST(Budget, DhostGuard) {
    EXPECT_THROW(dhost_exact(make_path(10)), BudgetExceeded);  // 29 coordinates
}
