#include <gtest/gtest.h>

#include "qlocal/dist.hpp"
#include "qlocal/targets.hpp"

using namespace qlocal;

namespace {

Dyadic random_dyadic(SplitMix64& rng, unsigned max_exp = 8) {
    unsigned e = static_cast<unsigned>(rng.next() % (max_exp + 1));
    long num = static_cast<long>(rng.next() % 1000) - 500;
    return Dyadic(num, e);
}

ExactDist random_dist(SplitMix64& rng, size_t len) {
    // random composition of 2^10 mass units over a random support
    std::vector<uint64_t> cuts;
    size_t atoms = 2 + rng.next() % 5;
    for (size_t i = 0; i + 1 < atoms; ++i) cuts.push_back(rng.next() % 1025);
    cuts.push_back(0);
    cuts.push_back(1024);
    std::sort(cuts.begin(), cuts.end());
    ExactDist::Pmf pmf;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        uint64_t gap = cuts[i + 1] - cuts[i];
        if (gap == 0) continue;
        BitString key = BitString::from_index(rng.next() % (uint64_t{1} << len), len);
        Dyadic mass(mpz_class(static_cast<unsigned long>(gap)), 10);
        auto [it, inserted] = pmf.emplace(key, mass);
        if (!inserted) it->second += mass;
    }
    return ExactDist(len, std::move(pmf));
}

}  // namespace

TEST(Dyadic, CanonicalForm) {
    Dyadic a(mpz_class(6), 3);  // 6/8 -> 3/4
    EXPECT_EQ(a.num(), 3);
    EXPECT_EQ(a.denom_exp(), 2u);
    Dyadic z(mpz_class(0), 7);
    EXPECT_TRUE(z.is_zero());
    EXPECT_EQ(z.denom_exp(), 0u);
}

TEST(Dyadic, ExactArithmetic) {
    SplitMix64 rng(11);
    for (int i = 0; i < 500; ++i) {
        Dyadic a = random_dyadic(rng), b = random_dyadic(rng);
        EXPECT_EQ((a + b) - b, a);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a + b) * b, a * b + b * b);
    }
}

TEST(Dyadic, Ordering) {
    EXPECT_LT(Dyadic(1, 3), Dyadic(1, 2));
    EXPECT_LT(-Dyadic(1, 1), Dyadic::zero());
    EXPECT_GE(Dyadic::one(), Dyadic(3, 2));
}

TEST(Dyadic, StringRoundTrip) {
    SplitMix64 rng(12);
    for (int i = 0; i < 200; ++i) {
        Dyadic a = random_dyadic(rng);
        EXPECT_EQ(Dyadic::parse(a.to_string()), a);
    }
    EXPECT_EQ(Dyadic::parse("3/2^2"), Dyadic(3, 2));
    EXPECT_EQ(Dyadic::parse("-1/2^1"), -Dyadic::one_half());
    EXPECT_EQ(Dyadic::parse("0/2^0"), Dyadic::zero());
}

TEST(Tow, SmallValues) {
    EXPECT_EQ(tow(0), 1);
    EXPECT_EQ(tow(1), 2);
    EXPECT_EQ(tow(2), 4);
    EXPECT_EQ(tow(3), 16);
    EXPECT_EQ(tow(4), 65536);
    EXPECT_EQ(mpz_sizeinbase(tow(5).get_mpz_t(), 2), 65537u);
    EXPECT_THROW(tow(6), std::invalid_argument);
}

TEST(BitString, Basics) {
    BitString b = BitString::from_string("1011");
    EXPECT_EQ(b.popcount(), 3u);
    EXPECT_EQ(b.to_string(), "1011");
    EXPECT_TRUE(b.get(0));
    EXPECT_FALSE(b.get(1));
    BitString c = BitString::from_index(0b1101, 4);
    EXPECT_EQ(c.to_string(), "1011");  // bit 0 first
    EXPECT_EQ((b ^ c).popcount(), 0u);
    EXPECT_EQ(b.concat(c).size(), 8u);
    EXPECT_EQ(b.project({3, 0}).to_string(), "11");
}

TEST(BitString, LongStrings) {
    BitString b(100);
    b.set(99, true);
    b.set(64, true);
    EXPECT_EQ(b.popcount(), 2u);
    BitString c = BitString::from_string(b.to_string());
    EXPECT_EQ(b, c);
}

TEST(TvDistance, Examples) {
    SplitMix64 rng(3);
    ExactDist p = random_dist(rng, 3);
    EXPECT_TRUE(tv_distance(p, p).is_zero());
    ExactDist a = ExactDist::point_mass(BitString::from_string("00"));
    ExactDist b = ExactDist::point_mass(BitString::from_string("11"));
    EXPECT_EQ(tv_distance(a, b), Dyadic::one());
    // U_{1/4} x U_{1/2} against dhard(1,1): distance 3/8
    ExactDist mixed = product(ProductDist::biased(1, Dyadic(1, 2)).expand(), ProductDist::unbiased(1).expand());
    EXPECT_EQ(tv_distance(mixed, dhard_exact({1, 1, false})), Dyadic(3, 3));
    EXPECT_THROW(tv_distance(a, ExactDist::point_mass(BitString::from_string("101"))),
                 std::invalid_argument);
}

TEST(TvDistance, MetricProperties) {
    SplitMix64 rng(21);
    for (int i = 0; i < 100; ++i) {
        ExactDist p = random_dist(rng, 3), q = random_dist(rng, 3), r = random_dist(rng, 3);
        Dyadic pq = tv_distance(p, q);
        EXPECT_EQ(pq, tv_distance(q, p));
        EXPECT_GE(pq, Dyadic::zero());
        EXPECT_LE(pq, Dyadic::one());
        EXPECT_LE(tv_distance(p, r), pq + tv_distance(q, r));
    }
}

TEST(TvDistance, DataProcessing) {
    SplitMix64 rng(22);
    for (int i = 0; i < 100; ++i) {
        ExactDist p = random_dist(rng, 4), q = random_dist(rng, 4);
        std::vector<int> coords{0, 2};
        EXPECT_LE(tv_distance(marginal(p, coords), marginal(q, coords)), tv_distance(p, q));
    }
}

TEST(TvEventCharacterization, Holds) {
    ExactDist p = dhard_exact({1, 1, false});
    ExactDist q = product(ProductDist::biased(1, Dyadic(1, 2)).expand(), ProductDist::unbiased(1).expand());
    EXPECT_TRUE(tv_event_characterization_check(p, p));
    EXPECT_TRUE(tv_event_characterization_check(
        ExactDist::point_mass(BitString::from_string("0")),
        ExactDist::point_mass(BitString::from_string("1"))));
    EXPECT_TRUE(tv_event_characterization_check(q, p));
    SplitMix64 rng(23);
    for (int i = 0; i < 100; ++i)
        EXPECT_TRUE(tv_event_characterization_check(random_dist(rng, 3), random_dist(rng, 3)));
}

TEST(Marginal, Examples) {
    ExactDist p = dhard_exact({2, 2, false});
    std::vector<int> all{0, 1, 2, 3};
    EXPECT_EQ(marginal(p, all), p);
    // uniform on {00, 11}: second coordinate is unbiased
    ExactDist::Pmf pmf;
    pmf[BitString::from_string("00")] = Dyadic::one_half();
    pmf[BitString::from_string("11")] = Dyadic::one_half();
    ExactDist even(2, std::move(pmf));
    EXPECT_EQ(marginal(even, {1}), ProductDist::unbiased(1).expand());
    EXPECT_THROW(marginal(p, {}), std::invalid_argument);
    EXPECT_THROW(marginal(p, {7}), std::invalid_argument);
}

TEST(Mix, Examples) {
    ExactDist p0 = ExactDist::point_mass(BitString::from_string("0"));
    ExactDist p1 = ExactDist::point_mass(BitString::from_string("1"));
    EXPECT_EQ(mix({Dyadic::one()}, {p0}), p0);
    EXPECT_EQ(mix({Dyadic::one_half(), Dyadic::one_half()}, {p0, p1}), ProductDist::unbiased(1).expand());
    EXPECT_EQ(mix({Dyadic(3, 2), Dyadic(1, 2)}, {p0, p1}), ProductDist::biased(1, Dyadic(1, 2)).expand());
    EXPECT_THROW(mix({Dyadic::one_half()}, {p0}), std::invalid_argument);
}

TEST(MixMarginalCommute, Property) {
    SplitMix64 rng(24);
    for (int i = 0; i < 50; ++i) {
        ExactDist a = random_dist(rng, 4), b = random_dist(rng, 4);
        std::vector<int> coords{1, 3};
        ExactDist lhs = marginal(mix({Dyadic(1, 2), Dyadic(3, 2)}, {a, b}), coords);
        ExactDist rhs = mix({Dyadic(1, 2), Dyadic(3, 2)}, {marginal(a, coords), marginal(b, coords)});
        EXPECT_EQ(lhs, rhs);
    }
}

TEST(ProductKfold, Examples) {
    EXPECT_EQ(kfold(ProductDist::unbiased(1).expand(), 3), ProductDist::unbiased(3).expand());
    ExactDist p0 = ExactDist::point_mass(BitString::from_string("0"));
    ExactDist p1 = ExactDist::point_mass(BitString::from_string("1"));
    EXPECT_EQ(product(p0, p1), ExactDist::point_mass(BitString::from_string("01")));
    ExactDist sq = kfold(dhard_exact({1, 1, false}), 2);
    EXPECT_EQ(sq.mass(BitString::from_string("0000")), Dyadic(9, 4));
    EXPECT_EQ(kfold(dhard_exact({1, 1, false}), 1), dhard_exact({1, 1, false}));
}

TEST(Sample, PointMassAndDeterminism) {
    ExactDist p = ExactDist::point_mass(BitString::from_string("101"));
    auto samples = sample(p, 99, 5);
    ASSERT_EQ(samples.size(), 5u);
    for (const auto& s : samples) EXPECT_EQ(s.to_string(), "101");
    auto a = sample(ProductDist::unbiased(4), 1234, 50);
    auto b = sample(ProductDist::unbiased(4), 1234, 50);
    EXPECT_EQ(a, b);
    auto c = sample(ProductDist::unbiased(4), 1235, 50);
    EXPECT_NE(a, c);
}

TEST(Sample, BiasedConvergence) {
    // 2^20 draws from U_{1/4}: frequency of 1 within 0.25 +/- 0.002
    // (about 4.6 standard deviations, so a fixed seed comfortably passes)
    auto samples = sample(ProductDist::biased(1, Dyadic(1, 2)), 77, 1 << 20);
    size_t ones = 0;
    for (const auto& s : samples) ones += s.popcount();
    double freq = static_cast<double>(ones) / static_cast<double>(samples.size());
    EXPECT_NEAR(freq, 0.25, 0.002);
}

TEST(Sample, ExactDistMatchesMasses) {
    ExactDist p = dhard_exact({1, 1, false});
    auto emp = empirical(sample(p, 5, 1 << 18));
    EXPECT_LT(tv_distance(emp, p), Dyadic(1, 6));  // within 1/64
}

TEST(Budget, Guard) {
    EXPECT_THROW(ExactDist::uniform(30), BudgetExceeded);
    EXPECT_NO_THROW(ExactDist::uniform(10));
    EXPECT_THROW(ProductDist::unbiased(30).expand(), BudgetExceeded);
}
